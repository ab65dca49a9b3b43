#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "symdet/errors.hpp"

namespace symdet {

class FieldElement;

/// Description of a finite field GF(p^k).
///
/// Elements are residues in the polynomial basis, packed into a machine word:
/// the base-p digits of the packed value are the polynomial-basis coordinates
/// (for GF(2^k), bit i is the coefficient of t^i). The principal case is
/// p = 2 with k <= 16; odd primes are supported for k = 1 only.
class FieldSpec {
public:
    FieldSpec(std::uint64_t p, unsigned k, std::uint64_t modulus);

    std::uint64_t characteristic() const { return p_; }
    unsigned degree() const { return k_; }
    std::uint64_t order() const { return q_; }
    /// Packed literal of the modulus polynomial (0 when k = 1, where it is unused).
    std::uint64_t modulus_literal() const { return k_ == 1 ? 0 : modulus_; }

    std::string name() const;

    bool same_as(const FieldSpec& other) const {
        return p_ == other.p_ && k_ == other.k_ && modulus_literal() == other.modulus_literal();
    }

    // Raw arithmetic on packed values. Callers must pass values < order().
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    /// The unique square root, via the Frobenius inverse a^(2^(k-1)). Requires p = 2.
    std::uint64_t sqrt(std::uint64_t a) const;

    void check_literal(std::uint64_t v) const;

    /// Built-in irreducible modulus for GF(2^k), k in {1,2,3,4,8}.
    static std::uint64_t default_modulus(std::uint64_t p, unsigned k);

private:
    std::uint64_t p_;
    unsigned k_;
    std::uint64_t q_;
    std::uint64_t modulus_;  // bit-packed GF(2) polynomial of degree k (p = 2, k > 1)

    std::uint64_t mul2_(std::uint64_t a, std::uint64_t b) const;
};

/// Shared-handle wrapper around a FieldSpec; cheap to copy, compares by value.
class Field {
public:
    /// GF(p^k) with the built-in modulus table.
    static Field gf(std::uint64_t p, unsigned k = 1);
    /// GF(p^k) with a caller-supplied modulus literal (validated for irreducibility).
    static Field gf(std::uint64_t p, unsigned k, std::uint64_t modulus);

    const FieldSpec& spec() const { return *spec_; }
    bool valid() const { return spec_ != nullptr; }

    std::uint64_t characteristic() const { return spec_->characteristic(); }
    unsigned degree() const { return spec_->degree(); }
    std::uint64_t order() const { return spec_->order(); }
    std::string name() const { return spec_->name(); }

    FieldElement element(std::uint64_t literal) const;
    FieldElement zero() const;
    FieldElement one() const;
    /// All q elements exactly once, in increasing literal order.
    std::vector<FieldElement> elements() const;

    bool operator==(const Field& other) const {
        if (spec_ == other.spec_) return true;
        if (!spec_ || !other.spec_) return false;
        return spec_->same_as(*other.spec_);
    }
    bool operator!=(const Field& other) const { return !(*this == other); }

private:
    explicit Field(std::shared_ptr<const FieldSpec> spec) : spec_(std::move(spec)) {}
    std::shared_ptr<const FieldSpec> spec_;
};

class FieldElement {
public:
    FieldElement(Field field, std::uint64_t value) : field_(std::move(field)), value_(value) {
        field_.spec().check_literal(value_);
    }

    const Field& field() const { return field_; }
    std::uint64_t value() const { return value_; }
    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }

    FieldElement operator+(const FieldElement& o) const {
        check_same(o);
        return raw(field_.spec().add(value_, o.value_));
    }
    FieldElement operator-(const FieldElement& o) const {
        check_same(o);
        return raw(field_.spec().sub(value_, o.value_));
    }
    FieldElement operator*(const FieldElement& o) const {
        check_same(o);
        return raw(field_.spec().mul(value_, o.value_));
    }
    FieldElement operator/(const FieldElement& o) const {
        check_same(o);
        return raw(field_.spec().mul(value_, field_.spec().inv(o.value_)));
    }
    FieldElement operator-() const { return raw(field_.spec().neg(value_)); }

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement inverse() const { return raw(field_.spec().inv(value_)); }
    FieldElement square() const { return raw(field_.spec().mul(value_, value_)); }
    FieldElement sqrt() const { return raw(field_.spec().sqrt(value_)); }
    FieldElement pow(std::uint64_t e) const { return raw(field_.spec().pow(value_, e)); }

    bool operator==(const FieldElement& o) const { return field_ == o.field_ && value_ == o.value_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    FieldElement raw(std::uint64_t v) const {
        FieldElement e = *this;
        e.value_ = v;
        return e;
    }
    void check_same(const FieldElement& o) const {
        if (field_ != o.field_)
            throw FieldMismatchError("field mismatch: " + field_.name() + " vs " + o.field_.name());
    }

    Field field_;
    std::uint64_t value_;
};

namespace detail {

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Degree of a bit-packed GF(2) polynomial; -1 for the zero polynomial.
inline int gf2_degree(std::uint64_t a) {
    if (a == 0) return -1;
    return 63 - __builtin_clzll(a);
}

// Remainder of bit-packed GF(2) polynomial division.
inline std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t m) {
    int dm = gf2_degree(m);
    for (int da = gf2_degree(a); da >= dm; da = gf2_degree(a))
        a ^= m << (da - dm);
    return a;
}

inline std::uint64_t gf2_mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    a = gf2_mod(a, m);
    b = gf2_mod(b, m);
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (gf2_degree(a) >= gf2_degree(m)) a ^= m;
    }
    return r;
}

// Quotient of bit-packed GF(2) polynomial division.
inline std::uint64_t gf2_div(std::uint64_t a, std::uint64_t m) {
    int dm = gf2_degree(m);
    std::uint64_t q = 0;
    for (int da = gf2_degree(a); da >= dm; da = gf2_degree(a)) {
        q ^= std::uint64_t{1} << (da - dm);
        a ^= m << (da - dm);
    }
    return q;
}

inline bool gf2_irreducible(std::uint64_t m, unsigned k) {
    // Trial division against all monic polynomials of degree <= k/2.
    for (unsigned d = 1; 2 * d <= k; ++d) {
        std::uint64_t lead = std::uint64_t{1} << d;
        for (std::uint64_t low = 0; low < lead; ++low)
            if (gf2_mod(m, lead | low) == 0) return false;
    }
    return true;
}

}  // namespace detail

inline FieldSpec::FieldSpec(std::uint64_t p, unsigned k, std::uint64_t modulus)
    : p_(p), k_(k), modulus_(modulus) {
    if (!detail::is_prime(p)) throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
    if (p >= (std::uint64_t{1} << 16)) throw std::invalid_argument("field characteristic too large");
    if (k == 0) throw std::invalid_argument("extension degree must be >= 1");
    if (p != 2 && k != 1)
        throw UnsupportedCharacteristicError("extension fields are supported for p = 2 only");
    if (p == 2 && k > 16) throw std::invalid_argument("extension degree capped at 16");
    q_ = 1;
    for (unsigned i = 0; i < k; ++i) q_ *= p;
    if (k > 1) {
        if (detail::gf2_degree(modulus) != static_cast<int>(k))
            throw std::invalid_argument("modulus must have degree k = " + std::to_string(k));
        if (!detail::gf2_irreducible(modulus, k))
            throw std::invalid_argument("modulus polynomial is reducible");
    }
}

inline std::string FieldSpec::name() const {
    if (k_ == 1) return "GF(" + std::to_string(p_) + ")";
    return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
}

inline std::uint64_t FieldSpec::add(std::uint64_t a, std::uint64_t b) const {
    if (p_ == 2) return a ^ b;
    return (a + b) % p_;
}

inline std::uint64_t FieldSpec::sub(std::uint64_t a, std::uint64_t b) const {
    if (p_ == 2) return a ^ b;
    return (a + p_ - b) % p_;
}

inline std::uint64_t FieldSpec::neg(std::uint64_t a) const {
    if (p_ == 2) return a;
    return a == 0 ? 0 : p_ - a;
}

inline std::uint64_t FieldSpec::mul2_(std::uint64_t a, std::uint64_t b) const {
    if (k_ == 1) return (a * b) & 1;
    return detail::gf2_mul_mod(a, b, modulus_);
}

inline std::uint64_t FieldSpec::mul(std::uint64_t a, std::uint64_t b) const {
    if (p_ == 2) return mul2_(a, b);
    return (a * b) % p_;
}

inline std::uint64_t FieldSpec::inv(std::uint64_t a) const {
    if (a == 0) throw DivisionByZeroError();
    if (p_ != 2) {
        // extended Euclid on integers
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), newr = static_cast<std::int64_t>(a);
        while (newr != 0) {
            std::int64_t quot = r / newr;
            std::int64_t tmp = t - quot * newt;
            t = newt;
            newt = tmp;
            tmp = r - quot * newr;
            r = newr;
            newr = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return static_cast<std::uint64_t>(t);
    }
    if (k_ == 1) return 1;
    // extended Euclid on representative polynomials over GF(2),
    // with the Bezout coefficient kept reduced modulo the field modulus
    std::uint64_t t = 0, newt = 1;
    std::uint64_t r = modulus_, newr = a;
    while (newr != 0) {
        std::uint64_t quot = detail::gf2_div(r, newr);
        std::uint64_t rem = detail::gf2_mod(r, newr);
        r = newr;
        newr = rem;
        std::uint64_t tnext = t ^ detail::gf2_mul_mod(quot, newt, modulus_);
        t = newt;
        newt = tnext;
    }
    return t;
}

inline std::uint64_t FieldSpec::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t FieldSpec::sqrt(std::uint64_t a) const {
    if (p_ != 2)
        throw UnsupportedCharacteristicError("square roots are implemented for characteristic 2 only");
    // Frobenius is a bijection: sqrt(a) = a^(2^(k-1))
    std::uint64_t r = a;
    for (unsigned i = 0; i + 1 < k_; ++i) r = mul(r, r);
    return r;
}

inline void FieldSpec::check_literal(std::uint64_t v) const {
    if (v >= q_)
        throw std::invalid_argument("field literal " + std::to_string(v) + " out of range for " + name());
}

inline std::uint64_t FieldSpec::default_modulus(std::uint64_t p, unsigned k) {
    if (p != 2 || k == 1) return 0;
    switch (k) {
        case 2: return 0b111;            // t^2+t+1
        case 3: return 0b1011;           // t^3+t+1
        case 4: return 0b10011;          // t^4+t+1
        case 8: return 0b100011011;      // t^8+t^4+t^3+t+1
        default:
            throw std::invalid_argument("no built-in modulus for GF(2^" + std::to_string(k) +
                                        "); supply one explicitly");
    }
}

inline Field Field::gf(std::uint64_t p, unsigned k) {
    return Field(std::make_shared<const FieldSpec>(p, k, FieldSpec::default_modulus(p, k)));
}

inline Field Field::gf(std::uint64_t p, unsigned k, std::uint64_t modulus) {
    return Field(std::make_shared<const FieldSpec>(p, k, modulus));
}

inline FieldElement Field::element(std::uint64_t literal) const { return FieldElement(*this, literal); }
inline FieldElement Field::zero() const { return element(0); }
inline FieldElement Field::one() const { return element(1); }

inline std::vector<FieldElement> Field::elements() const {
    std::vector<FieldElement> out;
    out.reserve(order());
    for (std::uint64_t v = 0; v < order(); ++v) out.push_back(element(v));
    return out;
}

}  // namespace symdet
