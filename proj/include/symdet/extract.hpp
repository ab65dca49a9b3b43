#pragma once

#include <vector>

#include "symdet/gadgets.hpp"
#include "symdet/symmat.hpp"

namespace symdet {

/// Factorization of pi(det M) into linear elements of R(l):
/// constant * factors[0] * ... * factors[k-1].
struct RingFactorization {
    FieldElement constant;
    std::vector<QuotientElement> factors;
    std::size_t iterations = 0;  // isolation steps taken (at most 2n)

    QuotientElement product(const Ctx& ctx) const {
        QuotientElement acc(ctx, Polynomial::constant(constant, ctx->nvars()));
        for (const auto& f : factors) acc = acc * f;
        return acc;
    }

    bool all_linear() const {
        for (const auto& f : factors)
            if (!f.is_linear()) return false;
        return true;
    }

    /// Checks constant * prod(factors) = pi(p) by a q_mul fold.
    bool verify(const Polynomial& p, const Ctx& ctx) const {
        return product(ctx) == q_project(p, ctx);
    }
};

namespace detail {

inline PolyMatrix symmetric_swap(const PolyMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return m;
    std::size_t n = m.n();
    Matrix<Polynomial> g(n, n, Polynomial::zero(m.field(), m.nvars()));
    auto ix = [&](std::size_t i) { return i == a ? b : (i == b ? a : i); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g.at(i, j) = m.entry(ix(i), ix(j));
    return PolyMatrix::from_grid(m.field(), m.nvars(), std::move(g), m.ctx());
}

/// The bordered step of the non-invertible case: writes A_00 as 1 + (A_00+1),
/// borders the matrix, isolates the bordered entry and drops it. The result
/// has the same dimensions, satisfies det(A) = (A_00+1) * det(result) in
/// R(l), and contains an invertible diagonal entry.
inline PolyMatrix bordered_step(const PolyMatrix& a) {
    std::size_t n = a.n();
    const Field& f = a.field();
    unsigned nv = a.nvars();
    Polynomial one = Polynomial::constant(f.one(), nv);
    PolyMatrix b(f, nv, n + 1, a.ctx());
    b.set(0, 0, one);
    b.set(0, 1, one);
    b.set(1, 1, a.entry(0, 0) + one);
    for (std::size_t j = 1; j < n; ++j) b.set(1, 1 + j, a.entry(0, j));
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) b.set(1 + i, 1 + j, a.entry(i, j));
    return mat_iso(b, 1).without(1);
}

}  // namespace detail

/// Runs the row/column isolation algorithm on a ring-gSDR (a Cleaned
/// projection with linear diagonal representatives), peeling off one linear
/// factor per step:
///   (a) an invertible diagonal entry is isolated, emitted, and removed;
///   (b) otherwise a nonzero diagonal entry with a nonzero off-diagonal
///       neighbour is split off as (A_ii + 1) by the bordered transform,
///       which leaves an invertible diagonal entry for the next step;
///   (c) otherwise every diagonal entry is zero or already isolated:
///       isolated entries are emitted and the residual zero-diagonal
///       constant block contributes its Gaussian determinant.
/// Total O(n^3) field operations, at most 2n iterations.
inline RingFactorization extract_factorization(const PolyMatrix& matrix, const Ctx& ctx) {
    PolyMatrix a = mat_clean(mat_project(matrix, ctx));
    std::size_t n0 = a.n();
    for (std::size_t i = 0; i < n0; ++i)
        if (!a.entry(i, i).is_linear())
            throw InvalidEntryError("diagonal projection is not linear: not a gSDR over R(l)");

    RingFactorization out{ctx->field().one(), {}, 0};
    while (a.n() > 0) {
        std::size_t n = a.n();

        // (a) invertible diagonal pivot, lowest index first
        std::size_t inv = n;
        for (std::size_t i = 0; i < n && inv == n; ++i)
            if (!QuotientElement(ctx, a.entry(i, i)).abs().is_zero()) inv = i;
        if (inv < n) {
            ++out.iterations;
            a = mat_iso(a, inv);
            out.factors.emplace_back(ctx, a.entry(inv, inv));
            a = a.without(inv);
            continue;
        }

        // (b) nonzero diagonal with a nonzero off-diagonal entry in its row
        std::size_t piv = n;
        for (std::size_t i = 0; i < n && piv == n; ++i) {
            if (a.entry(i, i).is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && !a.entry(i, j).is_zero()) {
                    piv = i;
                    break;
                }
        }
        if (piv < n) {
            ++out.iterations;
            if (out.iterations > 2 * n0)
                throw std::logic_error("isolation exceeded its 2n iteration bound");
            PolyMatrix swapped = detail::symmetric_swap(a, 0, piv);
            out.factors.emplace_back(
                ctx, swapped.entry(0, 0) + Polynomial::constant(ctx->field().one(), a.nvars()));
            a = detail::bordered_step(swapped);
            continue;
        }

        // (c) every diagonal entry is zero or the only nonzero entry in its
        // row and column
        std::vector<std::size_t> zero_rows;
        for (std::size_t i = 0; i < n; ++i) {
            if (!a.entry(i, i).is_zero())
                out.factors.emplace_back(ctx, a.entry(i, i));
            else
                zero_rows.push_back(i);
        }
        Matrix<FieldElement> block(zero_rows.size(), zero_rows.size(), ctx->field().zero());
        for (std::size_t i = 0; i < zero_rows.size(); ++i)
            for (std::size_t j = 0; j < zero_rows.size(); ++j)
                block.at(i, j) = a.entry(zero_rows[i], zero_rows[j]).constant_term();
        out.constant = out.constant * det_gauss(block, ctx->field());
        break;
    }
    return out;
}

inline RingFactorization extract_factorization(const SdrMatrix& m, const Ctx& ctx) {
    return extract_factorization(to_poly_matrix(m), ctx);
}

/// Quadratic-form diagonals project to linear representatives, so a gSDR
/// goes through the same pipeline.
inline RingFactorization extract_factorization(const GsdrMatrix& m, const Ctx& ctx) {
    return extract_factorization(m.to_poly_matrix(), ctx);
}

}  // namespace symdet
