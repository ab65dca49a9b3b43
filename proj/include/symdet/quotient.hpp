#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_set>
#include <vector>

#include "symdet/poly.hpp"

namespace symdet {

/// The quotient ring R(l) = F[x_1,...,x_m] / <x_1^2+l_1, ..., x_m^2+l_m>.
/// Over a finite field of characteristic 2 every tuple is a tuple of squares;
/// the context records sqrt(l_i) for each i (construction rejects fields
/// where some l_i has no square root).
class QuotientContext {
public:
    QuotientContext(Field field, std::vector<FieldElement> ell)
        : field_(std::move(field)), ell_(std::move(ell)) {
        if (field_.characteristic() != 2)
            throw UnsupportedCharacteristicError("quotient contexts require characteristic 2");
        if (ell_.size() > kMaxVariables) throw std::invalid_argument("tuple too long");
        sqrt_ell_.reserve(ell_.size());
        for (const auto& li : ell_) {
            if (li.field() != field_) throw FieldMismatchError("tuple entry from a different field");
            sqrt_ell_.push_back(li.sqrt());
        }
    }

    const Field& field() const { return field_; }
    unsigned nvars() const { return static_cast<unsigned>(ell_.size()); }
    const std::vector<FieldElement>& ell() const { return ell_; }
    const std::vector<FieldElement>& sqrt_ell() const { return sqrt_ell_; }

    bool same_as(const QuotientContext& o) const {
        if (field_ != o.field_ || ell_.size() != o.ell_.size()) return false;
        for (std::size_t i = 0; i < ell_.size(); ++i)
            if (ell_[i] != o.ell_[i]) return false;
        return true;
    }

private:
    Field field_;
    std::vector<FieldElement> ell_;
    std::vector<FieldElement> sqrt_ell_;
};

using Ctx = std::shared_ptr<const QuotientContext>;

inline Ctx make_context(const Field& field, std::vector<FieldElement> ell) {
    return std::make_shared<const QuotientContext>(field, std::move(ell));
}

/// Broadcast form: l = (v, v, ..., v) with m entries.
inline Ctx make_context(const Field& field, unsigned m, std::uint64_t v) {
    return make_context(field, std::vector<FieldElement>(m, field.element(v)));
}

inline bool same_context(const Ctx& a, const Ctx& b) {
    return a == b || (a && b && a->same_as(*b));
}

/// Element of R(l), held as its unique multilinear representative.
class QuotientElement {
public:
    QuotientElement(Ctx ctx, Polynomial rep) : ctx_(std::move(ctx)), rep_(std::move(rep)) {
        if (!ctx_) throw std::invalid_argument("null quotient context");
        if (!rep_.is_multilinear()) throw std::logic_error("representative must be multilinear");
    }

    const Ctx& ctx() const { return ctx_; }
    /// The unique multilinear representative (the lift rho(r)).
    const Polynomial& rep() const { return rep_; }

    bool is_zero() const { return rep_.is_zero(); }
    bool is_linear() const { return rep_.is_linear(); }

    QuotientElement operator*(const QuotientElement& o) const {
        check_ctx(o);
        return QuotientElement(ctx_, (rep_ * o.rep_).mult_reduce(ctx_->ell()));
    }

    QuotientElement operator+(const QuotientElement& o) const {
        check_ctx(o);
        return QuotientElement(ctx_, rep_ + o.rep_);
    }

    /// The absolute value |r|: the unique constant c with c^2 = r^2.
    FieldElement abs() const {
        Polynomial sq = (rep_ * rep_).mult_reduce(ctx_->ell());
        if (sq.degree() > 0) throw std::logic_error("square of a quotient element must be constant");
        return sq.constant_term().sqrt();
    }

    /// Invertible iff the square (equivalently |r|) is nonzero.
    bool is_invertible() const { return !abs().is_zero(); }

    bool operator==(const QuotientElement& o) const {
        return same_context(ctx_, o.ctx_) && rep_ == o.rep_;
    }
    bool operator!=(const QuotientElement& o) const { return !(*this == o); }

private:
    void check_ctx(const QuotientElement& o) const {
        if (!same_context(ctx_, o.ctx_)) throw std::invalid_argument("quotient context mismatch");
    }

    Ctx ctx_;
    Polynomial rep_;
};

/// Canonical projection F[x] -> R(l), realized as the multilinear reduction.
inline QuotientElement q_project(const Polynomial& p, const Ctx& ctx) {
    if (p.field() != ctx->field()) throw FieldMismatchError("polynomial over a different field");
    if (p.nvars() != ctx->nvars()) throw std::invalid_argument("variable count != context arity");
    return QuotientElement(ctx, p.mult_reduce(ctx->ell()));
}

namespace detail {

// Enumeration guard: the ring size q^(2^m) must stay within 2^24.
inline std::uint64_t ring_size_checked(const QuotientContext& ctx) {
    unsigned m = ctx.nvars();
    std::uint64_t bits_per_coeff = ctx.field().degree();  // q = 2^k
    if (m >= 25 || (std::uint64_t{1} << m) * bits_per_coeff > 24)
        throw TooLargeError("quotient ring too large to enumerate (guard: 2^m * log2(q) <= 24)");
    std::uint64_t n = 1;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << m); ++i) n *= ctx.field().order();
    return n;
}

}  // namespace detail

inline std::uint64_t ring_size(const Ctx& ctx) { return detail::ring_size_checked(*ctx); }

/// Packs the coefficient tuple of the representative into an integer key:
/// base-q digits indexed by ascending monomial bitmask.
inline std::uint64_t encode_element(const QuotientElement& r) {
    const auto& ctx = *r.ctx();
    std::uint64_t q = ctx.field().order();
    std::uint64_t key = 0;
    std::uint64_t scale = 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ctx.nvars()); ++mask) {
        key += r.rep().coefficient(Monomial::from_mask(mask)).value() * scale;
        scale *= q;
    }
    return key;
}

inline QuotientElement decode_element(const Ctx& ctx, std::uint64_t key) {
    std::uint64_t q = ctx->field().order();
    Polynomial rep(ctx->field(), ctx->nvars());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ctx->nvars()); ++mask) {
        rep.add_term(Monomial::from_mask(mask), ctx->field().element(key % q));
        key /= q;
    }
    return QuotientElement(ctx, rep);
}

/// Visits all q^(2^m) ring elements exactly once, in increasing key order.
inline void for_each_element(const Ctx& ctx, const std::function<void(const QuotientElement&)>& fn) {
    std::uint64_t n = ring_size(ctx);
    for (std::uint64_t key = 0; key < n; ++key) fn(decode_element(ctx, key));
}

inline std::vector<QuotientElement> q_enumerate(const Ctx& ctx) {
    std::vector<QuotientElement> out;
    out.reserve(ring_size(ctx));
    for_each_element(ctx, [&](const QuotientElement& r) { out.push_back(r); });
    return out;
}

/// The smallest multiplicatively-closed subset of R(l) containing the
/// projections of all linear polynomials (constants included): the brute
/// force oracle for factorizability modulo I(l).
class LinearClosure {
public:
    explicit LinearClosure(Ctx ctx) : ctx_(std::move(ctx)) {
        detail::ring_size_checked(*ctx_);
        const Field& f = ctx_->field();
        unsigned m = ctx_->nvars();

        // seed with every linear polynomial c_0 + c_1 x_1 + ... + c_m x_m
        std::vector<QuotientElement> members;
        std::uint64_t seeds = 1;
        for (unsigned i = 0; i <= m; ++i) seeds *= f.order();
        for (std::uint64_t s = 0; s < seeds; ++s) {
            std::uint64_t digits = s;
            Polynomial lin(f, m);
            lin.add_term(Monomial::one(), f.element(digits % f.order()));
            digits /= f.order();
            for (unsigned i = 0; i < m; ++i) {
                lin.add_term(Monomial::variable(i), f.element(digits % f.order()));
                digits /= f.order();
            }
            QuotientElement r(ctx_, lin);
            if (keys_.insert(encode_element(r)).second) members.push_back(r);
        }

        // worklist saturation: once members[h] has been paired with every
        // earlier element the set is product-closed
        for (std::size_t h = 0; h < members.size(); ++h) {
            QuotientElement a = members[h];
            for (std::size_t i = 0; i < members.size(); ++i) {
                QuotientElement p = a * members[i];
                if (keys_.insert(encode_element(p)).second) members.push_back(p);
            }
        }
    }

    bool contains(const QuotientElement& r) const {
        if (!same_context(r.ctx(), ctx_)) throw std::invalid_argument("quotient context mismatch");
        return keys_.count(encode_element(r)) > 0;
    }

    std::size_t size() const { return keys_.size(); }
    const Ctx& ctx() const { return ctx_; }

    /// Members in increasing key order.
    std::vector<QuotientElement> elements() const {
        std::vector<std::uint64_t> keys(keys_.begin(), keys_.end());
        std::sort(keys.begin(), keys.end());
        std::vector<QuotientElement> out;
        out.reserve(keys.size());
        for (auto k : keys) out.push_back(decode_element(ctx_, k));
        return out;
    }

private:
    Ctx ctx_;
    std::unordered_set<std::uint64_t> keys_;
};

inline LinearClosure q_linear_closure(const Ctx& ctx) { return LinearClosure(ctx); }

}  // namespace symdet
