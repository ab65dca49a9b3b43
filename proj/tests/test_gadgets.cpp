#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "symdet/gadgets.hpp"

using namespace symdet;

namespace {

Field f2() { return Field::gf(2); }

Polynomial P2(const std::string& s) { return parse_polynomial(s, f2(), {"x", "y", "z"}); }

WeightedGraph random_graph(const Field& f, unsigned nvars, std::size_t n, std::mt19937_64& rng) {
    WeightedGraph g(f, nvars, n);
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::size_t v = 0; v < n; ++v)
        if (coin(rng)) g.set_loop(v, testutil::random_polynomial(f, nvars, 2, 1, rng));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(rng)) g.set_edge(u, v, testutil::random_polynomial(f, nvars, 2, 1, rng));
    return g;
}

Polynomial sdr_det_via_graph(const SdrMatrix& m) {
    return WeightedGraph::from_matrix(to_poly_matrix(m)).determinant();
}

}  // namespace

TEST_CASE("matching determinant agrees with the dense oracles", "[gadgets]") {
    std::mt19937_64 rng(101);
    for (int iter = 0; iter < 150; ++iter) {
        const Field f = iter % 2 ? Field::gf(2, 2) : f2();
        std::uniform_int_distribution<std::size_t> size(1, 7);
        WeightedGraph g = random_graph(f, 2, size(rng), rng);
        Polynomial adj_det = det_involution(g.adjacency());
        CHECK(g.determinant() == adj_det);
        CHECK(det_subset(g.adjacency()) == adj_det);
    }
}

TEST_CASE("square gadget on fixtures", "[gadgets]") {
    // constant: a single pair s - t with edge weight c
    Field f4 = Field::gf(2, 2);
    SquareGadget c = gadget_square(Polynomial::constant(f4.element(3), 1));
    CHECK(c.graph.size() == 2);
    CHECK(c.graph.determinant() == Polynomial::constant(f4.element(3).square(), 1));
    CHECK(c.graph.without({c.s, c.t}).determinant() ==
          Polynomial::constant(f4.one(), 1));

    // P = x: 4 vertices
    SquareGadget x = gadget_square(parse_polynomial("x", f2(), {"x"}));
    CHECK(x.graph.size() == 4);
    CHECK(x.graph.determinant() == parse_polynomial("x^2", f2(), {"x"}));
    CHECK(x.graph.without({x.s, x.t}).determinant() == parse_polynomial("1", f2(), {"x"}));
    CHECK(x.graph.without({x.s}).determinant().is_zero());

    // P = x+1 over GF(2)
    SquareGadget g = gadget_square(parse_polynomial("x+1", f2(), {"x"}));
    CHECK(g.graph.determinant() == parse_polynomial("x^2+1", f2(), {"x"}));
    CHECK(g.graph.without({g.s, g.t}).determinant() == parse_polynomial("1", f2(), {"x"}));
    CHECK(g.graph.without({g.s}).determinant().is_zero());
    CHECK(g.graph.without({g.t}).determinant().is_zero());

    // P = 0: two isolated loopless vertices
    SquareGadget zero = gadget_square(Polynomial::zero(f2(), 1));
    CHECK(zero.graph.size() == 2);
    CHECK(zero.graph.determinant().is_zero());
    CHECK(zero.graph.without({zero.s, zero.t}).determinant() ==
          Polynomial::constant(f2().one(), 1));
}

TEST_CASE("square gadget triple contract on random polynomials", "[gadgets]") {
    std::mt19937_64 rng(103);
    for (int iter = 0; iter < 200; ++iter) {
        const Field f = iter % 2 ? Field::gf(2, 2) : f2();
        Polynomial p = testutil::random_polynomial(f, 3, 3, 3, rng);
        SquareGadget g = gadget_square(p);
        CHECK(g.graph.determinant() == p.square());
        CHECK(g.graph.without({g.s, g.t}).determinant() ==
              Polynomial::constant(f.one(), 3));
        CHECK(g.graph.without({g.s}).determinant().is_zero());
        CHECK(g.graph.without({g.t}).determinant().is_zero());
    }
}

TEST_CASE("wheel determinant", "[gadgets]") {
    Field f = f2();
    // lambda = (1): det = 1
    CHECK(det_involution(gadget_wheel({f.one()})) == Polynomial::constant(f.one(), 0));
    // lambda = (0,1): det = x_1
    CHECK(det_involution(gadget_wheel({f.zero(), f.one()})) ==
          Polynomial::variable(f, 1, 0));

    std::mt19937_64 rng(107);
    Field f4 = Field::gf(2, 2);
    for (int iter = 0; iter < 200; ++iter) {
        std::uniform_int_distribution<unsigned> msel(0, 3);
        unsigned m = msel(rng);
        std::vector<FieldElement> lambda;
        for (unsigned i = 0; i <= m; ++i) lambda.push_back(testutil::random_element(f4, rng));
        SdrMatrix w = gadget_wheel(lambda);
        CHECK(w.n() == 2 * (m + 1) + 1);
        Polynomial expected = Polynomial::constant(lambda[0].square(), m);
        for (unsigned i = 1; i <= m; ++i)
            expected += Polynomial::variable(f4, m, i - 1) * lambda[i].square();
        Polynomial det = det_involution(w);
        CHECK(det == expected);
        // constant term vanishes exactly when lambda_0 does
        CHECK(det.constant_term().is_zero() == lambda[0].is_zero());
    }
}

TEST_CASE("edge substitution identity on random graphs", "[gadgets]") {
    std::mt19937_64 rng(109);
    for (int iter = 0; iter < 200; ++iter) {
        const Field f = iter % 2 ? Field::gf(2, 2) : f2();
        std::uniform_int_distribution<std::size_t> size(2, 6);
        WeightedGraph g = random_graph(f, 2, size(rng), rng);
        Polynomial det = g.determinant();
        for (const auto& [e, w] : g.edges()) {
            WeightedGraph minus = g;
            minus.remove_edge(e.first, e.second);
            CHECK(det == minus.determinant() +
                             w.square() * g.without({e.first, e.second}).determinant());
        }
    }
}

TEST_CASE("replacing an edge by the square gadget of its weight", "[gadgets]") {
    std::mt19937_64 rng(113);
    for (int iter = 0; iter < 100; ++iter) {
        const Field f = iter % 2 ? Field::gf(2, 2) : f2();
        std::uniform_int_distribution<std::size_t> size(2, 5);
        WeightedGraph g = random_graph(f, 2, size(rng), rng);
        if (g.edges().empty()) continue;
        Polynomial det = g.determinant();
        auto [e, w] = *g.edges().begin();
        WeightedGraph replaced = gadget_replace_edge(g, e.first, e.second, gadget_square(w));
        CHECK(replaced.determinant() == det);
    }

    WeightedGraph g(f2(), 1, 2);
    g.set_edge(0, 1, Polynomial::constant(f2().one(), 1));
    CHECK_THROWS(gadget_replace_edge(g, 0, 0, gadget_square(Polynomial::zero(f2(), 1))));

    // det(G-e) = 0 and det(G minus endpoints) = 0 force det 0
    WeightedGraph h(f2(), 1, 3);
    h.set_edge(0, 1, Polynomial::constant(f2().one(), 1));
    WeightedGraph sub = gadget_replace_edge(h, 0, 1, gadget_square(Polynomial::zero(f2(), 1)));
    CHECK(sub.determinant().is_zero());
}

TEST_CASE("replacing a loop by a wheel", "[gadgets]") {
    // single vertex with loop x_1
    Field f = f2();
    WeightedGraph g(f, 1, 1);
    g.set_loop(0, Polynomial::variable(f, 1, 0));
    std::size_t center = 0;
    WeightedGraph wheel = detail::wheel_graph(
        f, 1, {{Polynomial::constant(f.one(), 1), std::optional<unsigned>(0)}}, center);
    WeightedGraph replaced = gadget_replace_loop(g, 0, wheel, center);
    CHECK(replaced.determinant() == Polynomial::variable(f, 1, 0));

    CHECK_THROWS(gadget_replace_loop(WeightedGraph(f, 1, 1), 0, wheel, center));

    // determinant preservation with a quadratic-form loop
    std::mt19937_64 rng(127);
    for (int iter = 0; iter < 50; ++iter) {
        const Field fl = iter % 2 ? Field::gf(2, 2) : f2();
        std::uniform_int_distribution<std::size_t> size(1, 4);
        WeightedGraph base = random_graph(fl, 2, size(rng), rng);
        QuadraticForm form({testutil::random_polynomial(fl, 2, 2, 1, rng),
                            testutil::random_polynomial(fl, 2, 2, 1, rng),
                            testutil::random_polynomial(fl, 2, 2, 1, rng)});
        if (form.denote().is_zero()) continue;  // nothing to replace
        base.set_loop(0, form.denote());
        Polynomial expected = base.determinant();

        std::vector<detail::WheelSpoke> spokes;
        if (!form.components()[0].is_zero()) spokes.push_back({form.components()[0], std::nullopt});
        for (unsigned i = 1; i < form.components().size(); ++i)
            if (!form.components()[i].is_zero()) spokes.push_back({form.components()[i], i - 1});
        std::size_t c = 0;
        WeightedGraph w = detail::wheel_graph(fl, 2, spokes, c);
        CHECK(gadget_replace_loop(base, 0, w, c).determinant() == expected);
    }

    // wheel for a constant loop weight
    WeightedGraph k(f, 1, 1);
    k.set_loop(0, Polynomial::constant(f.one(), 1));
    std::size_t c2 = 0;
    WeightedGraph cw =
        detail::wheel_graph(f, 1, {{Polynomial::constant(f.one(), 1), std::nullopt}}, c2);
    CHECK(gadget_replace_loop(k, 0, cw, c2).determinant() ==
          Polynomial::constant(f.one(), 1));
}

TEST_CASE("linear_sdr", "[gadgets]") {
    SdrMatrix m = linear_sdr(parse_polynomial("x+1", f2(), {"x"}));
    CHECK(m.n() == 5);  // directions 0 and x only
    CHECK(det_involution(m) == parse_polynomial("x+1", f2(), {"x"}));

    CHECK(det_involution(linear_sdr(Polynomial::zero(f2(), 1))).is_zero());

    Field f4 = Field::gf(2, 2);
    Polynomial l = parse_polynomial("3*x", f4, {"x"});
    SdrMatrix w = linear_sdr(l);
    CHECK(w.n() == 3);
    CHECK(w.entry(0, 1).value() == f4.element(2));  // sqrt(3) = 2
    CHECK(det_involution(w) == l);

    CHECK_THROWS(linear_sdr(P2("x*y")));

    std::mt19937_64 rng(131);
    for (int iter = 0; iter < 100; ++iter) {
        const Field f = iter % 2 ? Field::gf(2, 2) : f2();
        Polynomial lin(f, 3);
        lin.add_term(Monomial::one(), testutil::random_element(f, rng));
        for (unsigned i = 0; i < 3; ++i)
            lin.add_term(Monomial::variable(i), testutil::random_element(f, rng));
        CHECK(det_involution(linear_sdr(lin)) == lin);
    }
}

TEST_CASE("block-diagonal product", "[gadgets]") {
    std::mt19937_64 rng(137);
    for (int iter = 0; iter < 50; ++iter) {
        const Field f = iter % 2 ? Field::gf(2, 2) : f2();
        SdrMatrix a(f, 2, 2), b(f, 2, 2);
        std::uniform_int_distribution<int> kind(0, 2);
        for (auto* m : {&a, &b})
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = i; j < 2; ++j) {
                    if (kind(rng) == 0)
                        m->set_variable(i, j, static_cast<unsigned>((i + j) % 2));
                    else
                        m->set_constant(i, j, testutil::random_element(f, rng));
                }
        CHECK(det_subset(gadget_product(a, b)) == det_subset(a) * det_subset(b));
    }

    SdrMatrix one(f2(), 3, 1);
    one.set_constant(0, 0, f2().one());
    SdrMatrix m = linear_sdr(P2("x+y"));
    CHECK(det_subset(gadget_product(m, one)) == det_subset(m));

    SdrMatrix zero(f2(), 3, 1);
    CHECK(det_subset(gadget_product(m, zero)).is_zero());
}

TEST_CASE("gsdr_to_sdr is the identity on an SDR", "[gadgets]") {
    GsdrMatrix a(f2(), 3, 2);
    a.set_diag_constant(0, f2().one());
    QuadraticForm x_form({Polynomial::zero(f2(), 3), Polynomial::constant(f2().one(), 3),
                          Polynomial::zero(f2(), 3), Polynomial::zero(f2(), 3)});
    a.set_diag_form(1, x_form);
    a.set_offdiag(0, 1, P2("y"));

    SdrMatrix m = gsdr_to_sdr(a);
    CHECK(m.n() == 2);
    CHECK(m.entry(0, 0).value() == f2().one());
    CHECK(m.entry(1, 1).var_index() == 0);
    CHECK(m.entry(0, 1).var_index() == 1);
}

TEST_CASE("gsdr_to_sdr on a single quadratic-form entry", "[gadgets]") {
    // 1x1 matrix holding the form for x_1
    GsdrMatrix a(f2(), 1, 1);
    a.set_diag_form(0, QuadraticForm({Polynomial::zero(f2(), 1),
                                      Polynomial::constant(f2().one(), 1)}));
    SdrMatrix m = gsdr_to_sdr(a);
    CHECK(sdr_det_via_graph(m) == Polynomial::variable(f2(), 1, 0));
}

TEST_CASE("gsdr_to_sdr preserves the determinant", "[gadgets]") {
    std::mt19937_64 rng(139);
    for (int iter = 0; iter < 100; ++iter) {
        const Field f = iter % 2 ? Field::gf(2, 2) : f2();
        std::uniform_int_distribution<std::size_t> size(1, 3);
        std::size_t n = size(rng);
        GsdrMatrix a(f, 2, n);
        std::uniform_int_distribution<int> kind(0, 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (kind(rng)) {
                a.set_diag_constant(i, testutil::random_element(f, rng));
            } else {
                a.set_diag_form(i, QuadraticForm({testutil::random_polynomial(f, 2, 2, 1, rng),
                                                  testutil::random_polynomial(f, 2, 2, 1, rng),
                                                  testutil::random_polynomial(f, 2, 2, 1, rng)}));
            }
            for (std::size_t j = i + 1; j < n; ++j)
                a.set_offdiag(i, j, testutil::random_polynomial(f, 2, 2, 2, rng));
        }
        Polynomial expected = det_subset(a.to_poly_matrix());
        SdrMatrix m = gsdr_to_sdr(a);  // to_sdr validates all entries are simple
        CHECK(sdr_det_via_graph(m) == expected);
    }
}

TEST_CASE("DOT rendering", "[gadgets]") {
    WeightedGraph g(f2(), 3, 2);
    g.set_loop(0, P2("x"));
    g.set_edge(0, 1, P2("1"));
    std::string dot = g.to_dot({"x", "y", "z"});
    CHECK(dot.find("graph G {") != std::string::npos);
    CHECK(dot.find("v0 -- v0 [label=\"x\"]") != std::string::npos);
    CHECK(dot.find("v0 -- v1 [label=\"1\"]") != std::string::npos);
}
