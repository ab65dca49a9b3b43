#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "symdet/field.hpp"

namespace symdet {

inline constexpr unsigned kMaxVariables = 63;

/// Primitive monomial x^a, stored as an exponent vector with trailing zeros
/// trimmed. Multilinear monomials admit a canonical bitmask encoding
/// (bit i set <=> exponent of x_i is 1); conversion is explicit via
/// from_mask()/mask().
class Monomial {
public:
    Monomial() = default;  // the unit monomial

    static Monomial one() { return Monomial(); }

    static Monomial variable(unsigned i) {
        Monomial m;
        m.exps_.assign(i + 1, 0);
        m.exps_[i] = 1;
        return m;
    }

    static Monomial from_exponents(std::vector<std::uint32_t> exps) {
        Monomial m;
        m.exps_ = std::move(exps);
        m.trim_();
        return m;
    }

    static Monomial from_mask(std::uint64_t mask) {
        Monomial m;
        while (mask) {
            unsigned i = static_cast<unsigned>(__builtin_ctzll(mask));
            if (m.exps_.size() <= i) m.exps_.resize(i + 1, 0);
            m.exps_[i] = 1;
            mask &= mask - 1;
        }
        return m;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (auto e : exps_) d += e;
        return d;
    }

    std::uint32_t exponent(unsigned i) const { return i < exps_.size() ? exps_[i] : 0; }
    unsigned width() const { return static_cast<unsigned>(exps_.size()); }
    bool is_unit() const { return exps_.empty(); }

    bool is_multilinear() const {
        return std::all_of(exps_.begin(), exps_.end(), [](std::uint32_t e) { return e <= 1; });
    }

    std::uint64_t mask() const {
        std::uint64_t m = 0;
        for (unsigned i = 0; i < exps_.size(); ++i) {
            if (exps_[i] > 1) throw std::logic_error("mask() requires a multilinear monomial");
            if (exps_[i]) m |= std::uint64_t{1} << i;
        }
        return m;
    }

    std::uint64_t support_mask() const {
        std::uint64_t m = 0;
        for (unsigned i = 0; i < exps_.size(); ++i)
            if (exps_[i]) m |= std::uint64_t{1} << i;
        return m;
    }

    Monomial times(const Monomial& o) const {
        std::vector<std::uint32_t> e(std::max(exps_.size(), o.exps_.size()), 0);
        for (unsigned i = 0; i < e.size(); ++i) e[i] = exponent(i) + o.exponent(i);
        return from_exponents(std::move(e));
    }

    Monomial divided_by_variable(unsigned i) const {
        if (exponent(i) == 0) throw std::logic_error("monomial not divisible by that variable");
        auto e = exps_;
        e[i] -= 1;
        return from_exponents(std::move(e));
    }

    /// Graded order: total degree first, then exponents compared from the
    /// highest variable down (coincides with ascending bitmask order on
    /// multilinear monomials).
    int cmp(const Monomial& o) const {
        unsigned d1 = total_degree(), d2 = o.total_degree();
        if (d1 != d2) return d1 < d2 ? -1 : 1;
        unsigned w = std::max(width(), o.width());
        for (unsigned i = w; i-- > 0;) {
            std::uint32_t e1 = exponent(i), e2 = o.exponent(i);
            if (e1 != e2) return e1 < e2 ? -1 : 1;
        }
        return 0;
    }

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
    bool operator<(const Monomial& o) const { return cmp(o) < 0; }

private:
    void trim_() {
        while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
    }
    std::vector<std::uint32_t> exps_;
};

/// Sparse multivariate polynomial over a finite field: a map from primitive
/// monomials to nonzero coefficients, kept in graded order. The zero
/// polynomial is the empty map; no zero coefficient is ever stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, FieldElement>;

    Polynomial(Field field, unsigned nvars) : field_(std::move(field)), nvars_(nvars) {
        if (nvars_ > kMaxVariables) throw std::invalid_argument("variable count capped at 63");
    }

    static Polynomial zero(const Field& f, unsigned nvars) { return Polynomial(f, nvars); }

    static Polynomial constant(const FieldElement& c, unsigned nvars) {
        Polynomial p(c.field(), nvars);
        p.add_term(Monomial::one(), c);
        return p;
    }

    static Polynomial variable(const Field& f, unsigned nvars, unsigned i) {
        Polynomial p(f, nvars);
        p.add_term(Monomial::variable(i), f.one());
        return p;
    }

    static Polynomial monomial(const FieldElement& c, const Monomial& m, unsigned nvars) {
        Polynomial p(c.field(), nvars);
        p.add_term(m, c);
        return p;
    }

    const Field& field() const { return field_; }
    unsigned nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Adds c*m to the polynomial, keeping the canonical form.
    void add_term(const Monomial& m, const FieldElement& c) {
        if (m.width() > nvars_) throw std::invalid_argument("monomial uses variables beyond nvars");
        if (c.field() != field_) throw FieldMismatchError("coefficient from a different field");
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    FieldElement coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    FieldElement constant_term() const { return coefficient(Monomial::one()); }

    Polynomial operator+(const Polynomial& o) const {
        check_compatible(o);
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const {
        check_compatible(o);
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }

    Polynomial operator-() const {
        Polynomial r(field_, nvars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    Polynomial operator*(const Polynomial& o) const {
        check_compatible(o);
        Polynomial r(field_, nvars_);
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_) r.add_term(m1.times(m2), c1 * c2);
        return r;
    }

    Polynomial operator*(const FieldElement& c) const {
        Polynomial r(field_, nvars_);
        for (const auto& [m, c0] : terms_) r.add_term(m, c0 * c);
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    bool operator==(const Polynomial& o) const {
        return field_ == o.field_ && nvars_ == o.nvars_ && terms_ == o.terms_;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Termwise square, using the Frobenius identity (P+Q)^2 = P^2 + Q^2.
    /// Requires characteristic 2.
    Polynomial square() const {
        require_char2_("square");
        Polynomial r(field_, nvars_);
        for (const auto& [m, c] : terms_) {
            std::vector<std::uint32_t> e(m.width());
            for (unsigned i = 0; i < m.width(); ++i) e[i] = 2 * m.exponent(i);
            r.terms_.emplace(Monomial::from_exponents(std::move(e)), c.square());
        }
        return r;
    }

    /// Mult_l: the unique multilinear polynomial congruent to this one modulo
    /// the ideal <x_1^2+l_1, ..., x_m^2+l_m>; each factor x_i^2 becomes l_i.
    Polynomial mult_reduce(const std::vector<FieldElement>& ell) const {
        if (ell.size() != nvars_) throw std::invalid_argument("mult_reduce: tuple length != nvars");
        Polynomial r(field_, nvars_);
        for (const auto& [m, c] : terms_) {
            FieldElement coeff = c;
            std::vector<std::uint32_t> e(m.width());
            for (unsigned i = 0; i < m.width(); ++i) {
                std::uint32_t exp = m.exponent(i);
                if (exp >= 2) coeff *= ell[i].pow(exp / 2);
                e[i] = exp % 2;
            }
            r.add_term(Monomial::from_exponents(std::move(e)), coeff);
        }
        return r;
    }

    /// Sum of the monomials of total degree at most 1.
    Polynomial lin() const {
        Polynomial r(field_, nvars_);
        for (const auto& [m, c] : terms_) {
            if (m.total_degree() > 1) break;  // graded order
            r.terms_.emplace(m, c);
        }
        return r;
    }

    /// Formal partial derivative with respect to x_i.
    Polynomial partial(unsigned i) const {
        Polynomial r(field_, nvars_);
        for (const auto& [m, c] : terms_) {
            std::uint32_t e = m.exponent(i);
            if (e == 0) continue;
            FieldElement mult = c * field_.element(e % field_.characteristic());
            r.add_term(m.divided_by_variable(i), mult);
        }
        return r;
    }

    Polynomial substitute(unsigned i, const FieldElement& v) const {
        Polynomial r(field_, nvars_);
        for (const auto& [m, c] : terms_) {
            std::uint32_t e = m.exponent(i);
            if (e == 0) {
                r.add_term(m, c);
            } else {
                auto exps = std::vector<std::uint32_t>(m.width());
                for (unsigned j = 0; j < m.width(); ++j) exps[j] = m.exponent(j);
                exps[i] = 0;
                r.add_term(Monomial::from_exponents(std::move(exps)), c * v.pow(e));
            }
        }
        return r;
    }

    FieldElement evaluate(const std::vector<FieldElement>& point) const {
        if (point.size() < nvars_) throw std::invalid_argument("evaluation point too short");
        FieldElement acc = field_.zero();
        for (const auto& [m, c] : terms_) {
            FieldElement t = c;
            for (unsigned i = 0; i < m.width(); ++i)
                if (m.exponent(i)) t *= point[i].pow(m.exponent(i));
            acc += t;
        }
        return acc;
    }

    /// Minimal total degree of a nonzero monomial; nullopt (+infinity) for 0.
    std::optional<unsigned> valuation() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first.total_degree();  // graded order
    }

    int degree() const {
        if (terms_.empty()) return -1;
        return static_cast<int>(terms_.rbegin()->first.total_degree());
    }

    bool is_constant() const { return degree() <= 0; }
    bool is_linear() const { return degree() <= 1; }

    bool is_multilinear() const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const auto& t) { return t.first.is_multilinear(); });
    }

    /// Bitmask of the variables occurring in the polynomial.
    std::uint64_t support_mask() const {
        std::uint64_t s = 0;
        for (const auto& [m, c] : terms_) s |= m.support_mask();
        return s;
    }

    /// Full over its own support: a multilinear polynomial on m occurring
    /// variables with all 2^m coefficients nonzero.
    bool is_full() const {
        if (!is_multilinear()) throw std::invalid_argument("is_full requires a multilinear polynomial");
        unsigned m = static_cast<unsigned>(__builtin_popcountll(support_mask()));
        return terms_.size() == (std::size_t{1} << m);
    }

    /// In characteristic 2: true iff every exponent of every term is even
    /// (coefficients always have roots over GF(2^k)).
    bool is_square() const {
        require_char2_("is_square");
        for (const auto& [m, c] : terms_)
            for (unsigned i = 0; i < m.width(); ++i)
                if (m.exponent(i) % 2 != 0) return false;
        return true;
    }

    /// The unique Q with Q^2 = P (characteristic 2).
    Polynomial sqrt() const {
        if (!is_square()) throw NotASquareError("polynomial is not a square");
        Polynomial r(field_, nvars_);
        for (const auto& [m, c] : terms_) {
            std::vector<std::uint32_t> e(m.width());
            for (unsigned i = 0; i < m.width(); ++i) e[i] = m.exponent(i) / 2;
            r.terms_.emplace(Monomial::from_exponents(std::move(e)), c.sqrt());
        }
        return r;
    }

private:
    void check_compatible(const Polynomial& o) const {
        if (field_ != o.field_) throw FieldMismatchError("polynomials over different fields");
        if (nvars_ != o.nvars_) throw std::invalid_argument("polynomials with different variable counts");
    }
    void require_char2_(const char* op) const {
        if (field_.characteristic() != 2)
            throw UnsupportedCharacteristicError(std::string(op) + " requires characteristic 2");
    }

    Field field_;
    unsigned nvars_;
    TermMap terms_;
};

inline Polynomial operator*(const FieldElement& c, const Polynomial& p) { return p * c; }

}  // namespace symdet
