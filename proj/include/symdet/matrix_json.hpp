#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symdet/alternating.hpp"
#include "symdet/poly_io.hpp"
#include "symdet/symmat.hpp"

namespace symdet {

enum class MatrixShape { Any, Symmetric, Alternating };

struct LoadedMatrix {
    Field field;
    std::vector<std::string> vars;
    Matrix<Polynomial> grid;
};

inline nlohmann::json field_to_json(const Field& f) {
    nlohmann::json j;
    j["p"] = f.characteristic();
    j["k"] = f.degree();
    if (f.degree() == 1)
        j["modulus"] = nullptr;
    else
        j["modulus"] = f.spec().modulus_literal();
    return j;
}

inline Field field_from_json(const nlohmann::json& j) {
    std::uint64_t p = j.at("p").get<std::uint64_t>();
    unsigned k = j.at("k").get<unsigned>();
    if (j.contains("modulus") && !j.at("modulus").is_null())
        return Field::gf(p, k, j.at("modulus").get<std::uint64_t>());
    return Field::gf(p, k);
}

/// Entries are emitted as field-literal integers, variable-name strings, or
/// polynomial strings in the expression grammar.
inline nlohmann::json matrix_to_json(const Matrix<Polynomial>& grid, const Field& field,
                                     const std::vector<std::string>& vars) {
    nlohmann::json j;
    j["field"] = field_to_json(field);
    j["vars"] = vars;
    j["n"] = grid.n();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < grid.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < grid.n(); ++k) {
            const Polynomial& e = grid.at(i, k);
            if (e.is_constant()) {
                row.push_back(e.constant_term().value());
            } else if (detail::is_simple_weight(e)) {
                unsigned idx =
                    static_cast<unsigned>(__builtin_ctzll(e.terms().begin()->first.mask()));
                row.push_back(idx < vars.size() ? vars[idx] : "x" + std::to_string(idx + 1));
            } else {
                row.push_back(format_polynomial(e, vars));
            }
        }
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline nlohmann::json matrix_to_json(const SdrMatrix& m, const std::vector<std::string>& vars) {
    return matrix_to_json(to_poly_matrix(m).grid(), m.field(), vars);
}

inline LoadedMatrix matrix_from_json(const nlohmann::json& j, MatrixShape shape) {
    Field field = field_from_json(j.at("field"));
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    std::size_t n = j.at("n").get<std::size_t>();
    const auto& rows = j.at("entries");
    if (rows.size() != n) throw std::invalid_argument("matrix has the wrong number of rows");

    unsigned nvars = static_cast<unsigned>(vars.size());
    Matrix<Polynomial> grid(n, n, Polynomial::zero(field, nvars));
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw std::invalid_argument("matrix row has the wrong length");
        for (std::size_t k = 0; k < n; ++k) {
            const auto& cell = rows[i][k];
            if (cell.is_number_unsigned()) {
                grid.at(i, k) =
                    Polynomial::constant(field.element(cell.get<std::uint64_t>()), nvars);
            } else if (cell.is_string()) {
                grid.at(i, k) = parse_polynomial(cell.get<std::string>(), field, vars);
            } else {
                throw std::invalid_argument("matrix entries must be integers or strings");
            }
        }
    }

    if (shape == MatrixShape::Symmetric) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k)
                if (grid.at(i, k) != grid.at(k, i))
                    throw std::invalid_argument("matrix is not symmetric");
    } else if (shape == MatrixShape::Alternating) {
        AlternatingMatrix::from_grid(field, nvars, grid);  // validates
    }
    return LoadedMatrix{std::move(field), std::move(vars), std::move(grid)};
}

/// Converts to an SDR when every entry lies in F union {x}; nullopt otherwise.
inline std::optional<SdrMatrix> try_to_sdr(const LoadedMatrix& m) {
    std::size_t n = m.grid.n();
    unsigned nvars = static_cast<unsigned>(m.vars.size());
    SdrMatrix out(m.field, nvars, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Polynomial& e = m.grid.at(i, j);
            if (e != m.grid.at(j, i)) return std::nullopt;
            if (e.is_constant()) {
                out.set_constant(i, j, e.constant_term());
            } else if (detail::is_simple_weight(e)) {
                out.set_variable(
                    i, j, static_cast<unsigned>(__builtin_ctzll(e.terms().begin()->first.mask())));
            } else {
                return std::nullopt;
            }
        }
    return out;
}

}  // namespace symdet
