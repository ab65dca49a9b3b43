#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "symdet/matrix.hpp"
#include "symdet/poly.hpp"
#include "symdet/quotient.hpp"

namespace symdet {

/// Entry of an SDR: a field constant or a bare variable.
class SdrEntry {
public:
    static SdrEntry constant(FieldElement c) { return SdrEntry(std::move(c), 0, false); }
    static SdrEntry variable(const Field& f, unsigned index) {
        return SdrEntry(f.zero(), index, true);
    }

    bool is_variable() const { return is_var_; }
    bool is_constant() const { return !is_var_; }
    bool is_zero() const { return !is_var_ && value_.is_zero(); }
    const FieldElement& value() const {
        if (is_var_) throw std::logic_error("entry is a variable");
        return value_;
    }
    unsigned var_index() const {
        if (!is_var_) throw std::logic_error("entry is a constant");
        return var_;
    }
    const Field& field() const { return value_.field(); }

    Polynomial to_polynomial(unsigned nvars) const {
        return is_var_ ? Polynomial::variable(value_.field(), nvars, var_)
                       : Polynomial::constant(value_, nvars);
    }

    bool operator==(const SdrEntry& o) const {
        if (is_var_ != o.is_var_) return false;
        return is_var_ ? var_ == o.var_ : value_ == o.value_;
    }
    bool operator!=(const SdrEntry& o) const { return !(*this == o); }

private:
    SdrEntry(FieldElement v, unsigned var, bool is_var)
        : value_(std::move(v)), var_(var), is_var_(is_var) {}
    FieldElement value_;
    unsigned var_;
    bool is_var_;
};

/// Symmetric matrix with entries in F union {x_1, ..., x_m}.
class SdrMatrix {
public:
    SdrMatrix(Field field, unsigned nvars, std::size_t n)
        : field_(std::move(field)),
          nvars_(nvars),
          grid_(n, n, SdrEntry::constant(field_.zero())) {}

    const Field& field() const { return field_; }
    unsigned nvars() const { return nvars_; }
    std::size_t n() const { return grid_.rows(); }

    const SdrEntry& entry(std::size_t i, std::size_t j) const { return grid_.at(i, j); }

    void set(std::size_t i, std::size_t j, const SdrEntry& e) {
        if (e.is_variable() && e.var_index() >= nvars_)
            throw std::invalid_argument("variable index out of range");
        if (e.is_constant() && e.value().field() != field_)
            throw FieldMismatchError("entry from a different field");
        grid_.at(i, j) = e;
        grid_.at(j, i) = e;
    }

    void set_constant(std::size_t i, std::size_t j, const FieldElement& c) {
        set(i, j, SdrEntry::constant(c));
    }
    void set_variable(std::size_t i, std::size_t j, unsigned var) {
        set(i, j, SdrEntry::variable(field_, var));
    }

    Polynomial entry_poly(std::size_t i, std::size_t j) const {
        return grid_.at(i, j).to_polynomial(nvars_);
    }

    bool operator==(const SdrMatrix& o) const {
        return field_ == o.field_ && nvars_ == o.nvars_ && grid_ == o.grid_;
    }

private:
    Field field_;
    unsigned nvars_;
    Matrix<SdrEntry> grid_;
};

/// Symmetric matrix of polynomials. When a quotient context is attached the
/// entries are multilinear representatives of elements of R(l) (the
/// "ring-gSDR" form used by the congruence transformations).
class PolyMatrix {
public:
    PolyMatrix(Field field, unsigned nvars, std::size_t n, Ctx ctx = nullptr)
        : field_(std::move(field)),
          nvars_(nvars),
          grid_(n, n, Polynomial::zero(field_, nvars_)),
          ctx_(std::move(ctx)) {
        check_ctx_();
    }

    static PolyMatrix from_grid(Field field, unsigned nvars, Matrix<Polynomial> grid,
                                Ctx ctx = nullptr) {
        std::size_t n = grid.n();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (grid.at(i, j) != grid.at(j, i))
                    throw std::invalid_argument("matrix is not symmetric");
        PolyMatrix m(std::move(field), nvars, n, std::move(ctx));
        m.grid_ = std::move(grid);
        return m;
    }

    const Field& field() const { return field_; }
    unsigned nvars() const { return nvars_; }
    std::size_t n() const { return grid_.rows(); }
    const Ctx& ctx() const { return ctx_; }
    bool has_ctx() const { return ctx_ != nullptr; }

    const Polynomial& entry(std::size_t i, std::size_t j) const { return grid_.at(i, j); }
    const Matrix<Polynomial>& grid() const { return grid_; }

    void set(std::size_t i, std::size_t j, const Polynomial& p) {
        if (p.field() != field_ || p.nvars() != nvars_)
            throw std::invalid_argument("entry context mismatch");
        grid_.at(i, j) = p;
        grid_.at(j, i) = p;
    }

    PolyMatrix with_ctx(Ctx ctx) const {
        PolyMatrix m = *this;
        m.ctx_ = std::move(ctx);
        m.check_ctx_();
        return m;
    }

    /// Removes one row/column pair, keeping symmetry.
    PolyMatrix without(std::size_t index) const {
        PolyMatrix m(field_, nvars_, n() - 1, ctx_);
        for (std::size_t i = 0, ii = 0; i < n(); ++i) {
            if (i == index) continue;
            for (std::size_t j = 0, jj = 0; j < n(); ++j) {
                if (j == index) continue;
                m.grid_.at(ii, jj) = grid_.at(i, j);
                ++jj;
            }
            ++ii;
        }
        return m;
    }

    bool operator==(const PolyMatrix& o) const {
        return field_ == o.field_ && nvars_ == o.nvars_ && grid_ == o.grid_ &&
               same_context(ctx_, o.ctx_);
    }

private:
    void check_ctx_() const {
        if (ctx_ && (ctx_->field() != field_ || ctx_->nvars() != nvars_))
            throw std::invalid_argument("quotient context does not match matrix");
    }

    Field field_;
    unsigned nvars_;
    Matrix<Polynomial> grid_;
    Ctx ctx_;
};

inline PolyMatrix to_poly_matrix(const SdrMatrix& m, Ctx ctx = nullptr) {
    PolyMatrix out(m.field(), m.nvars(), m.n(), std::move(ctx));
    for (std::size_t i = 0; i < m.n(); ++i)
        for (std::size_t j = i; j < m.n(); ++j) out.set(i, j, m.entry_poly(i, j));
    return out;
}

inline SdrMatrix block_diag(const SdrMatrix& a, const SdrMatrix& b) {
    if (a.field() != b.field() || a.nvars() != b.nvars())
        throw std::invalid_argument("block context mismatch");
    SdrMatrix m(a.field(), a.nvars(), a.n() + b.n());
    for (std::size_t i = 0; i < a.n(); ++i)
        for (std::size_t j = i; j < a.n(); ++j) m.set(i, j, a.entry(i, j));
    for (std::size_t i = 0; i < b.n(); ++i)
        for (std::size_t j = i; j < b.n(); ++j) m.set(a.n() + i, a.n() + j, b.entry(i, j));
    return m;
}

/// Size limits for the exponential determinant routines; overridable by flag.
struct DetGuards {
    std::size_t involution_max = 10;
    std::size_t subset_max = 16;
    std::size_t pfaffian_max = 12;
};

/// Determinant of a symmetric matrix in characteristic 2, as the sum over
/// involutions: an involution contributes the product of the fixed diagonal
/// entries and the squares of the paired entries.
inline Polynomial det_involution(const PolyMatrix& m, const DetGuards& guards = {}) {
    if (m.field().characteristic() != 2)
        throw UnsupportedCharacteristicError("det_involution requires characteristic 2");
    std::size_t n = m.n();
    if (n > guards.involution_max)
        throw TooLargeError("det_involution guard exceeded (n <= " +
                            std::to_string(guards.involution_max) + ")");
    Polynomial total = Polynomial::zero(m.field(), m.nvars());
    std::vector<bool> covered(n, false);
    Polynomial acc = Polynomial::constant(m.field().one(), m.nvars());

    auto rec = [&](auto&& self, std::size_t first) -> void {
        while (first < n && covered[first]) ++first;
        if (first == n) {
            total += acc;
            return;
        }
        covered[first] = true;
        // fixed point of the involution
        if (!m.entry(first, first).is_zero()) {
            Polynomial saved = acc;
            acc *= m.entry(first, first);
            self(self, first + 1);
            acc = std::move(saved);
        }
        // paired with a later index
        for (std::size_t j = first + 1; j < n; ++j) {
            if (covered[j] || m.entry(first, j).is_zero()) continue;
            covered[j] = true;
            Polynomial saved = acc;
            acc *= m.entry(first, j).square();
            self(self, first + 1);
            acc = std::move(saved);
            covered[j] = false;
        }
        covered[first] = false;
    };
    rec(rec, 0);
    return total;
}

inline Polynomial det_involution(const SdrMatrix& m, const DetGuards& guards = {}) {
    return det_involution(to_poly_matrix(m), guards);
}

/// Division-free determinant over the commutative polynomial ring, valid in
/// any characteristic: signed Laplace expansion memoized over column subsets.
inline Polynomial det_subset(const Matrix<Polynomial>& grid, const Field& field, unsigned nvars,
                             const DetGuards& guards = {}) {
    std::size_t n = grid.n();
    if (n > guards.subset_max)
        throw TooLargeError("det_subset guard exceeded (n <= " + std::to_string(guards.subset_max) +
                            ")");
    std::unordered_map<std::uint32_t, Polynomial> memo;
    auto rec = [&](auto&& self, std::size_t row, std::uint32_t colmask) -> Polynomial {
        if (row == n) return Polynomial::constant(field.one(), nvars);
        auto it = memo.find(colmask);
        if (it != memo.end()) return it->second;
        Polynomial acc = Polynomial::zero(field, nvars);
        bool plus = true;
        for (std::uint32_t rest = colmask; rest; rest &= rest - 1) {
            std::size_t j = static_cast<std::size_t>(__builtin_ctz(rest));
            if (!grid.at(row, j).is_zero()) {
                Polynomial term = grid.at(row, j) * self(self, row + 1, colmask & ~(1u << j));
                if (plus)
                    acc += term;
                else
                    acc -= term;
            }
            plus = !plus;
        }
        memo.emplace(colmask, acc);
        return acc;
    };
    std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
    return rec(rec, 0, full);
}

inline Polynomial det_subset(const PolyMatrix& m, const DetGuards& guards = {}) {
    return det_subset(m.grid(), m.field(), m.nvars(), guards);
}

inline Polynomial det_subset(const SdrMatrix& m, const DetGuards& guards = {}) {
    return det_subset(to_poly_matrix(m), guards);
}

/// Determinant of a constant matrix by Gaussian elimination, exact over F.
inline FieldElement det_gauss(const Matrix<FieldElement>& m, const Field& field) {
    std::size_t n = m.n();
    const FieldSpec& spec = field.spec();
    std::vector<std::uint64_t> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.at(i, j).value();

    bool negate = false;
    std::uint64_t det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot * n + col] == 0) ++pivot;
        if (pivot == n) return field.zero();
        if (pivot != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
            negate = !negate;
        }
        std::uint64_t p = a[col * n + col];
        det = spec.mul(det, p);
        std::uint64_t pinv = spec.inv(p);
        for (std::size_t i = col + 1; i < n; ++i) {
            std::uint64_t factor = spec.mul(a[i * n + col], pinv);
            if (factor == 0) continue;
            for (std::size_t j = col; j < n; ++j)
                a[i * n + j] = spec.sub(a[i * n + j], spec.mul(factor, a[col * n + j]));
        }
    }
    if (negate) det = spec.neg(det);
    return field.element(det);
}

/// Pfaffian of an alternating matrix (antisymmetric, zero diagonal), by
/// signed expansion along the first remaining row, memoized over vertex
/// subsets. Odd dimension gives 0. Valid in any characteristic.
inline Polynomial pfaffian(const Matrix<Polynomial>& grid, const Field& field, unsigned nvars,
                           const DetGuards& guards = {}) {
    std::size_t n = grid.n();
    for (std::size_t i = 0; i < n; ++i) {
        if (!grid.at(i, i).is_zero())
            throw NotAlternatingError("nonzero diagonal entry at index " + std::to_string(i));
        for (std::size_t j = i + 1; j < n; ++j)
            if (grid.at(i, j) != -grid.at(j, i))
                throw NotAlternatingError("entries (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") are not antisymmetric");
    }
    if (n % 2 == 1) return Polynomial::zero(field, nvars);
    if (n > guards.pfaffian_max)
        throw TooLargeError("pfaffian guard exceeded (n <= " + std::to_string(guards.pfaffian_max) +
                            ")");
    std::unordered_map<std::uint32_t, Polynomial> memo;
    auto rec = [&](auto&& self, std::uint32_t mask) -> Polynomial {
        if (mask == 0) return Polynomial::constant(field.one(), nvars);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        std::size_t i = static_cast<std::size_t>(__builtin_ctz(mask));
        std::uint32_t rest = mask & ~(1u << i);
        Polynomial acc = Polynomial::zero(field, nvars);
        bool plus = true;
        for (std::uint32_t r = rest; r; r &= r - 1) {
            std::size_t j = static_cast<std::size_t>(__builtin_ctz(r));
            if (!grid.at(i, j).is_zero()) {
                Polynomial term = grid.at(i, j) * self(self, rest & ~(1u << j));
                if (plus)
                    acc += term;
                else
                    acc -= term;
            }
            plus = !plus;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
    return rec(rec, full);
}

/// In characteristic 2 an alternating matrix is symmetric, so it can live in
/// a PolyMatrix.
inline Polynomial pfaffian(const PolyMatrix& m, const DetGuards& guards = {}) {
    return pfaffian(m.grid(), m.field(), m.nvars(), guards);
}

/// Entrywise projection into R(l). The result is a ring-gSDR whenever the
/// diagonal projections are linear (always, for entries in F union {x}).
inline PolyMatrix mat_project(const SdrMatrix& m, const Ctx& ctx) {
    return to_poly_matrix(m, ctx);
}

inline PolyMatrix mat_project(const PolyMatrix& m, const Ctx& ctx) {
    PolyMatrix out(m.field(), m.nvars(), m.n(), ctx);
    for (std::size_t i = 0; i < m.n(); ++i)
        for (std::size_t j = i; j < m.n(); ++j)
            out.set(i, j, m.entry(i, j).mult_reduce(ctx->ell()));
    return out;
}

/// Clean: replaces each off-diagonal entry by its absolute value, a constant
/// of F. The determinant in R(l) is unchanged because a paired entry only
/// ever contributes its square.
inline PolyMatrix mat_clean(const PolyMatrix& m) {
    if (!m.has_ctx()) throw std::invalid_argument("mat_clean requires a quotient context");
    PolyMatrix out = m;
    for (std::size_t i = 0; i < m.n(); ++i) {
        for (std::size_t j = i + 1; j < m.n(); ++j) {
            const Polynomial& e = m.entry(i, j);
            if (e.is_constant()) continue;
            if (!e.is_multilinear())
                throw InvalidEntryError("entry is not a ring representative");
            FieldElement a = QuotientElement(m.ctx(), e).abs();
            out.set(i, j, Polynomial::constant(a, m.nvars()));
        }
    }
    return out;
}

/// Add_{i,j,alpha}: adds alpha times row i to row j, then alpha times column
/// i to column j, and Cleans. Keeps the matrix symmetric, the diagonal
/// linear (A_jj becomes A_jj + alpha^2 A_ii) and det over R(l) unchanged.
inline PolyMatrix mat_add(const PolyMatrix& m, std::size_t i, std::size_t j,
                          const FieldElement& alpha) {
    if (!m.has_ctx()) throw std::invalid_argument("mat_add requires a quotient context");
    if (i == j) throw std::invalid_argument("mat_add requires i != j");
    if (alpha.field() != m.field()) throw FieldMismatchError("alpha from a different field");
    std::size_t n = m.n();
    Matrix<Polynomial> g(n, n, Polynomial::zero(m.field(), m.nvars()));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) g.at(r, c) = m.entry(r, c);
    for (std::size_t k = 0; k < n; ++k) g.at(j, k) += alpha * g.at(i, k);
    for (std::size_t k = 0; k < n; ++k) g.at(k, j) += alpha * g.at(k, i);
    return mat_clean(PolyMatrix::from_grid(m.field(), m.nvars(), std::move(g), m.ctx()));
}

/// Iso_i: isolates the diagonal entry A_ii, zeroing the rest of row/column i
/// by Add steps with alpha = A_ij * |A_ii|^-1. Requires |A_ii| != 0.
inline PolyMatrix mat_iso(const PolyMatrix& m, std::size_t i) {
    PolyMatrix a = mat_clean(m);
    FieldElement piv = QuotientElement(a.ctx(), a.entry(i, i)).abs();
    if (piv.is_zero()) throw NonInvertiblePivotError("diagonal entry has zero absolute value");
    FieldElement piv_inv = piv.inverse();
    for (std::size_t j = 0; j < a.n(); ++j) {
        if (j == i) continue;
        FieldElement alpha = a.entry(i, j).constant_term() * piv_inv;
        a = mat_add(a, i, j, alpha);
    }
    return a;
}

/// Makes each variable appear at most once on the diagonal by row/column
/// additions (2x = 0 in characteristic 2). Exact over F[x]: the determinant
/// is unchanged as a polynomial identity. Off-diagonal entries may become
/// general polynomials.
inline PolyMatrix mat_dedup_diagonal(const PolyMatrix& m) {
    if (m.field().characteristic() != 2)
        throw UnsupportedCharacteristicError("mat_dedup_diagonal requires characteristic 2");
    std::size_t n = m.n();
    // diagonal entries must be constants or single variables
    std::map<unsigned, std::vector<std::size_t>> occurrences;
    for (std::size_t i = 0; i < n; ++i) {
        const Polynomial& d = m.entry(i, i);
        if (d.is_constant()) continue;
        if (d.term_count() == 1 && d.degree() == 1 && !d.terms().begin()->second.is_zero() &&
            d.terms().begin()->second.is_one()) {
            unsigned var =
                static_cast<unsigned>(__builtin_ctzll(d.terms().begin()->first.mask()));
            occurrences[var].push_back(i);
        } else {
            throw InvalidEntryError("diagonal entry is neither a constant nor a single variable");
        }
    }
    Matrix<Polynomial> g(n, n, Polynomial::zero(m.field(), m.nvars()));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) g.at(r, c) = m.entry(r, c);
    for (const auto& [var, rows] : occurrences) {
        std::size_t survivor = rows.front();
        for (std::size_t t = 1; t < rows.size(); ++t) {
            std::size_t j = rows[t];
            for (std::size_t k = 0; k < n; ++k) g.at(j, k) += g.at(survivor, k);
            for (std::size_t k = 0; k < n; ++k) g.at(k, j) += g.at(k, survivor);
        }
    }
    return PolyMatrix::from_grid(m.field(), m.nvars(), std::move(g), m.ctx());
}

/// Polynomial-time exact determinant for SDR-shaped matrices whose
/// off-diagonal entries are constants and whose diagonal variables are
/// pairwise distinct. Such a determinant is multilinear, so it is recovered
/// from its evaluations on 0/1 assignments (characteristic 2).
inline Polynomial det_eval_multilinear(const SdrMatrix& m) {
    if (m.field().characteristic() != 2)
        throw UnsupportedCharacteristicError("det_eval_multilinear requires characteristic 2");
    std::size_t n = m.n();
    std::vector<unsigned> vars;
    std::vector<bool> seen(m.nvars(), false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j)
            if (m.entry(i, j).is_variable())
                throw InvalidEntryError("off-diagonal variables are not supported here");
        if (m.entry(i, i).is_variable()) {
            unsigned v = m.entry(i, i).var_index();
            if (seen[v]) throw InvalidEntryError("variable repeated on the diagonal");
            seen[v] = true;
            vars.push_back(v);
        }
    }
    if (vars.size() > 24) throw TooLargeError("too many diagonal variables");
    std::size_t nassign = std::size_t{1} << vars.size();

    std::vector<FieldElement> evals;
    evals.reserve(nassign);
    for (std::size_t t = 0; t < nassign; ++t) {
        Matrix<FieldElement> cm(n, n, m.field().zero());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const SdrEntry& e = m.entry(i, j);
                if (e.is_constant()) {
                    cm.at(i, j) = e.value();
                } else {
                    std::size_t pos = 0;
                    while (vars[pos] != e.var_index()) ++pos;
                    cm.at(i, j) = (t >> pos) & 1 ? m.field().one() : m.field().zero();
                }
            }
        evals.push_back(det_gauss(cm, m.field()));
    }

    // subset (Moebius) transform; signs vanish in characteristic 2
    for (std::size_t pos = 0; pos < vars.size(); ++pos)
        for (std::size_t t = 0; t < nassign; ++t)
            if ((t >> pos) & 1) evals[t] += evals[t ^ (std::size_t{1} << pos)];

    Polynomial out(m.field(), m.nvars());
    for (std::size_t t = 0; t < nassign; ++t) {
        if (evals[t].is_zero()) continue;
        std::uint64_t mask = 0;
        for (std::size_t pos = 0; pos < vars.size(); ++pos)
            if ((t >> pos) & 1) mask |= std::uint64_t{1} << vars[pos];
        out.add_term(Monomial::from_mask(mask), evals[t]);
    }
    return out;
}

}  // namespace symdet
