#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "symdet/alternating.hpp"
#include "symdet/factor.hpp"

using namespace symdet;

namespace {

Field f2() { return Field::gf(2); }

Polynomial P2(const std::string& s) { return parse_polynomial(s, f2(), {"x", "y", "z"}); }

Matrix<Polynomial> random_square(const Field& f, unsigned nvars, std::size_t n,
                                 std::mt19937_64& rng) {
    Matrix<Polynomial> g(n, n, Polynomial::zero(f, nvars));
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<unsigned> var(0, nvars - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (kind(rng) == 0)
                g.at(i, j) = Polynomial::variable(f, nvars, var(rng));
            else
                g.at(i, j) = Polynomial::constant(testutil::random_element(f, rng), nvars);
        }
    return g;
}

}  // namespace

TEST_CASE("alt_build of a 1x1 matrix", "[alternating]") {
    Field f = f2();
    Matrix<Polynomial> n(1, 1, Polynomial::variable(f, 1, 0));
    AlternatingMatrix m = alt_build(n, f, 1);
    CHECK(m.n() == 2);
    CHECK(m.entry(0, 1) == Polynomial::variable(f, 1, 0));
    CHECK(det(m) == parse_polynomial("x^2", f, {"x"}));
    CHECK(pfaffian(m) == Polynomial::variable(f, 1, 0));
}

TEST_CASE("alt_build squares the determinant in both characteristics", "[alternating]") {
    std::mt19937_64 rng(401);
    for (const Field& f : {Field::gf(2), Field::gf(3)}) {
        for (int iter = 0; iter < 50; ++iter) {
            std::uniform_int_distribution<std::size_t> size(1, 4);
            std::size_t n = size(rng);
            Matrix<Polynomial> g = random_square(f, 2, n, rng);
            Polynomial d = det_subset(g, f, 2);
            AlternatingMatrix m = alt_build(g, f, 2);
            CHECK(det(m) == d * d);
            Polynomial pf = pfaffian(m);
            CHECK(pf * pf == d * d);
            CHECK(alt_verify(m, d * d));
        }
    }
}

TEST_CASE("alt_build on a sym_det output", "[alternating]") {
    Polynomial p = P2("x*y+y*z+z*x");
    auto n = sym_det(p);
    REQUIRE(n.has_value());
    AlternatingMatrix m = alt_build(*n);
    // the block matrix is symmetric over GF(2), so the matching determinant applies
    PolyMatrix sym = PolyMatrix::from_grid(f2(), 3, m.grid());
    CHECK(WeightedGraph::from_matrix(sym).determinant() == p * p);
}

TEST_CASE("squareness test and witness", "[alternating]") {
    auto r = alt_representable(P2("x^2*y^2+1"));
    CHECK(r.representable);
    CHECK(*r.sqrt == P2("x*y+1"));

    CHECK(!alt_representable(P2("x*y+z")).representable);

    auto z = alt_representable(Polynomial::zero(f2(), 3));
    CHECK(z.representable);
    CHECK(z.sqrt->is_zero());

    CHECK_THROWS_AS(alt_representable(Polynomial::constant(Field::gf(3).one(), 1)),
                    UnsupportedCharacteristicError);
}

TEST_CASE("squareness matches the even-exponent criterion on squared fixtures", "[alternating]") {
    std::mt19937_64 rng(409);
    for (int iter = 0; iter < 100; ++iter) {
        const Field f = iter % 2 ? Field::gf(2, 2) : f2();
        Polynomial q = testutil::random_multilinear(f, 3, rng);
        auto r = alt_representable(q.square());
        CHECK(r.representable);
        CHECK(*r.sqrt == q);
        Polynomial odd = q + Polynomial::variable(f, 3, 0);
        if (!odd.is_square()) CHECK(!alt_representable(odd).representable);
    }
}

TEST_CASE("alt_verify rejects tampered matrices", "[alternating]") {
    Field f = f2();
    Matrix<Polynomial> n(2, 2, Polynomial::zero(f, 1));
    n.at(0, 0) = Polynomial::variable(f, 1, 0);
    n.at(1, 1) = Polynomial::constant(f.one(), 1);
    Polynomial d = det_subset(n, f, 1);
    AlternatingMatrix m = alt_build(n, f, 1);
    CHECK(alt_verify(m, d * d));
    CHECK(!alt_verify(m, d * d + Polynomial::constant(f.one(), 1)));

    // odd dimension: the Pfaffian (and determinant) vanish
    Matrix<Polynomial> odd(3, 3, Polynomial::zero(f, 1));
    AlternatingMatrix mo = AlternatingMatrix::from_grid(f, 1, odd);
    CHECK(alt_verify(mo, Polynomial::zero(f, 1)));

    Matrix<Polynomial> bad(2, 2, Polynomial::zero(f, 1));
    bad.at(0, 0) = Polynomial::constant(f.one(), 1);
    CHECK_THROWS_AS(AlternatingMatrix::from_grid(f, 1, bad), NotAlternatingError);
}
