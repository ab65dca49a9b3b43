#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "symdet/poly.hpp"

namespace symdet {

/// Variable-name table. When not fixed, identifiers bind to indices by first
/// occurrence; when fixed (e.g. by --vars), unknown identifiers are rejected.
class VarTable {
public:
    VarTable() = default;
    explicit VarTable(std::vector<std::string> names) : names_(std::move(names)), fixed_(true) {}

    unsigned index_of(const std::string& name, std::size_t pos) {
        for (unsigned i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        if (fixed_) throw ParseError("unknown variable '" + name + "'", pos);
        if (names_.size() >= kMaxVariables) throw ParseError("too many variables", pos);
        names_.push_back(name);
        return static_cast<unsigned>(names_.size() - 1);
    }

    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    bool fixed() const { return fixed_; }

private:
    std::vector<std::string> names_;
    bool fixed_ = false;
};

namespace detail {

enum class Tok { Uint, Ident, Plus, Star, Caret, End };

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;
    Tok tok = Tok::End;
    std::uint64_t uint_value = 0;
    std::string ident;
    std::size_t tok_pos = 0;

    explicit Lexer(std::string_view t) : text(t) { advance(); }

    void advance() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        tok_pos = pos;
        if (pos >= text.size()) {
            tok = Tok::End;
            return;
        }
        char c = text[pos];
        if (c == '+') {
            tok = Tok::Plus;
            ++pos;
        } else if (c == '*') {
            tok = Tok::Star;
            ++pos;
        } else if (c == '^') {
            tok = Tok::Caret;
            ++pos;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            tok = Tok::Uint;
            uint_value = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                std::uint64_t d = static_cast<std::uint64_t>(text[pos] - '0');
                if (uint_value > (UINT64_MAX - d) / 10) throw ParseError("integer literal overflow", tok_pos);
                uint_value = uint_value * 10 + d;
                ++pos;
            }
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok = Tok::Ident;
            ident.clear();
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                ident.push_back(text[pos]);
                ++pos;
            }
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", pos);
        }
    }
};

}  // namespace detail

/// Parses `poly := term ('+' term)*`, `term := coeff ('*' factor)* |
/// factor ('*' factor)*`, `factor := var ('^' uint)?`, with `coeff` a field
/// literal. Whitespace is insignificant.
inline Polynomial parse_polynomial(std::string_view text, const Field& field, VarTable& vars) {
    detail::Lexer lx(text);
    if (lx.tok == detail::Tok::End) throw ParseError("empty polynomial", 0);

    struct RawTerm {
        std::uint64_t coeff;
        std::map<unsigned, std::uint32_t> exps;
        std::size_t pos;
    };
    std::vector<RawTerm> raw;

    auto parse_factor = [&](RawTerm& t) {
        if (lx.tok != detail::Tok::Ident) throw ParseError("expected variable", lx.tok_pos);
        unsigned idx = vars.index_of(lx.ident, lx.tok_pos);
        lx.advance();
        std::uint32_t e = 1;
        if (lx.tok == detail::Tok::Caret) {
            lx.advance();
            if (lx.tok != detail::Tok::Uint) throw ParseError("expected exponent", lx.tok_pos);
            if (lx.uint_value > 1u << 20) throw ParseError("exponent too large", lx.tok_pos);
            e = static_cast<std::uint32_t>(lx.uint_value);
            lx.advance();
        }
        t.exps[idx] += e;
    };

    while (true) {
        RawTerm t{1, {}, lx.tok_pos};
        if (lx.tok == detail::Tok::Uint) {
            if (lx.uint_value >= field.order())
                throw ParseError("coefficient " + std::to_string(lx.uint_value) + " out of range for " +
                                     field.name(),
                                 lx.tok_pos);
            t.coeff = lx.uint_value;
            lx.advance();
            while (lx.tok == detail::Tok::Star) {
                lx.advance();
                parse_factor(t);
            }
        } else if (lx.tok == detail::Tok::Ident) {
            parse_factor(t);
            while (lx.tok == detail::Tok::Star) {
                lx.advance();
                parse_factor(t);
            }
        } else {
            throw ParseError("expected term", lx.tok_pos);
        }
        raw.push_back(std::move(t));
        if (lx.tok != detail::Tok::Plus) break;
        lx.advance();
    }
    if (lx.tok != detail::Tok::End) throw ParseError("trailing input", lx.tok_pos);

    Polynomial p(field, static_cast<unsigned>(vars.size()));
    for (const auto& t : raw) {
        std::vector<std::uint32_t> exps;
        for (const auto& [idx, e] : t.exps) {
            if (exps.size() <= idx) exps.resize(idx + 1, 0);
            exps[idx] = e;
        }
        p.add_term(Monomial::from_exponents(std::move(exps)), field.element(t.coeff));
    }
    return p;
}

inline Polynomial parse_polynomial(std::string_view text, const Field& field,
                                   const std::vector<std::string>& names) {
    VarTable vars(names);
    return parse_polynomial(text, field, vars);
}

inline std::string format_monomial(const Monomial& m, std::uint64_t coeff_literal,
                                   const std::vector<std::string>& names) {
    std::string out;
    bool unit_coeff = coeff_literal == 1;
    if (!unit_coeff || m.is_unit()) out = std::to_string(coeff_literal);
    for (unsigned i = 0; i < m.width(); ++i) {
        std::uint32_t e = m.exponent(i);
        if (e == 0) continue;
        if (!out.empty()) out += '*';
        out += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
        if (e >= 2) out += '^' + std::to_string(e);
    }
    return out;
}

/// Emits terms in graded order, omitting unit coefficients and ^1.
inline std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        if (!out.empty()) out += '+';
        out += format_monomial(m, c.value(), names);
    }
    return out;
}

inline std::vector<std::string> default_var_names(unsigned m) {
    static const char* kShort[] = {"x", "y", "z", "w"};
    std::vector<std::string> names;
    if (m <= 4) {
        for (unsigned i = 0; i < m; ++i) names.push_back(kShort[i]);
    } else {
        for (unsigned i = 0; i < m; ++i) names.push_back("x" + std::to_string(i + 1));
    }
    return names;
}

}  // namespace symdet
