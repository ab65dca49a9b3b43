#pragma once

#include <random>
#include <vector>

#include "symdet/poly.hpp"

namespace testutil {

using symdet::Field;
using symdet::FieldElement;
using symdet::Monomial;
using symdet::Polynomial;

inline FieldElement random_element(const Field& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> d(0, f.order() - 1);
    return f.element(d(rng));
}

inline FieldElement random_nonzero(const Field& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> d(1, f.order() - 1);
    return f.element(d(rng));
}

inline Polynomial random_polynomial(const Field& f, unsigned nvars, unsigned max_terms,
                                    unsigned max_exp, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> nterms(0, max_terms);
    std::uniform_int_distribution<std::uint32_t> exp(0, max_exp);
    Polynomial p(f, nvars);
    unsigned n = nterms(rng);
    for (unsigned t = 0; t < n; ++t) {
        std::vector<std::uint32_t> e(nvars);
        for (auto& x : e) x = exp(rng);
        p.add_term(Monomial::from_exponents(std::move(e)), random_element(f, rng));
    }
    return p;
}

inline Polynomial random_multilinear(const Field& f, unsigned nvars, std::mt19937_64& rng) {
    Polynomial p(f, nvars);
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nvars); ++mask)
        if (coin(rng)) p.add_term(Monomial::from_mask(mask), random_nonzero(f, rng));
    return p;
}

}  // namespace testutil
