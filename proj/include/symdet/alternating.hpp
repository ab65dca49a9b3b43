#pragma once

#include <optional>

#include "symdet/symmat.hpp"

namespace symdet {

/// Matrix of an alternating form: antisymmetric with identically zero
/// diagonal (also in characteristic 2, where antisymmetric alone would not
/// force it). Valid in any characteristic.
class AlternatingMatrix {
public:
    static AlternatingMatrix from_grid(Field field, unsigned nvars, Matrix<Polynomial> grid) {
        std::size_t n = grid.n();
        for (std::size_t i = 0; i < n; ++i) {
            if (!grid.at(i, i).is_zero())
                throw NotAlternatingError("diagonal entry " + std::to_string(i) + " is nonzero");
            for (std::size_t j = i + 1; j < n; ++j)
                if (grid.at(j, i) != -grid.at(i, j))
                    throw NotAlternatingError("entries (" + std::to_string(i) + "," +
                                              std::to_string(j) + ") are not antisymmetric");
        }
        return AlternatingMatrix(std::move(field), nvars, std::move(grid));
    }

    const Field& field() const { return field_; }
    unsigned nvars() const { return nvars_; }
    std::size_t n() const { return grid_.n(); }
    const Polynomial& entry(std::size_t i, std::size_t j) const { return grid_.at(i, j); }
    const Matrix<Polynomial>& grid() const { return grid_; }

private:
    AlternatingMatrix(Field field, unsigned nvars, Matrix<Polynomial> grid)
        : field_(std::move(field)), nvars_(nvars), grid_(std::move(grid)) {}

    Field field_;
    unsigned nvars_;
    Matrix<Polynomial> grid_;
};

inline Polynomial pfaffian(const AlternatingMatrix& m, const DetGuards& guards = {}) {
    return pfaffian(m.grid(), m.field(), m.nvars(), guards);
}

inline Polynomial det(const AlternatingMatrix& m, const DetGuards& guards = {}) {
    return det_subset(m.grid(), m.field(), m.nvars(), guards);
}

/// The block construction M = ((0, N), (-N^T, 0)): a 2n x 2n alternating
/// matrix with det(M) = det(N)^2, in any characteristic.
inline AlternatingMatrix alt_build(const Matrix<Polynomial>& n_grid, const Field& field,
                                   unsigned nvars) {
    std::size_t n = n_grid.n();
    Matrix<Polynomial> g(2 * n, 2 * n, Polynomial::zero(field, nvars));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            g.at(i, n + j) = n_grid.at(i, j);
            g.at(n + j, i) = -n_grid.at(i, j);
        }
    return AlternatingMatrix::from_grid(field, nvars, std::move(g));
}

inline AlternatingMatrix alt_build(const SdrMatrix& n) {
    return alt_build(to_poly_matrix(n).grid(), n.field(), n.nvars());
}

struct AltRepresentability {
    bool representable;
    std::optional<Polynomial> sqrt;  // the witness Q with Q^2 = P, when representable
};

/// A polynomial is the determinant of an alternating matrix iff it is a
/// square. Characteristic 2 only: there the even-exponent test decides
/// squareness and the witness root is unique.
inline AltRepresentability alt_representable(const Polynomial& p) {
    if (p.field().characteristic() != 2)
        throw UnsupportedCharacteristicError(
            "the squareness test is implemented for characteristic 2 only");
    if (!p.is_square()) return {false, std::nullopt};
    return {true, p.sqrt()};
}

/// Checks pfaffian(M)^2 = P and det(M) = P, both exactly.
inline bool alt_verify(const AlternatingMatrix& m, const Polynomial& p,
                       const DetGuards& guards = {}) {
    Polynomial pf = pfaffian(m, guards);
    return pf * pf == p && det(m, guards) == p;
}

}  // namespace symdet
