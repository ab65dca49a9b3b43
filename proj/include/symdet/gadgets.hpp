#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "symdet/poly_io.hpp"
#include "symdet/symmat.hpp"

namespace symdet {

namespace detail {

/// Entry admissible in an SDR: a constant or a bare variable.
inline bool is_simple_weight(const Polynomial& p) {
    if (p.is_constant()) return true;
    return p.term_count() == 1 && p.degree() == 1 && p.terms().begin()->second.is_one();
}

}  // namespace detail

/// Undirected graph with polynomial loop and edge weights; its adjacency
/// matrix view is a symmetric PolyMatrix with the loop weights on the
/// diagonal. Zero-weight edges are not stored (they cannot contribute to a
/// partial matching).
class WeightedGraph {
public:
    WeightedGraph(Field field, unsigned nvars, std::size_t n = 0)
        : field_(std::move(field)), nvars_(nvars), n_(n) {}

    const Field& field() const { return field_; }
    unsigned nvars() const { return nvars_; }
    std::size_t size() const { return n_; }

    std::size_t add_vertex() { return n_++; }

    void set_loop(std::size_t v, const Polynomial& w) {
        check_vertex_(v);
        if (w.is_zero())
            loops_.erase(v);
        else
            loops_.insert_or_assign(v, w);
    }

    void remove_loop(std::size_t v) { loops_.erase(v); }

    bool has_loop(std::size_t v) const { return loops_.count(v) > 0; }

    Polynomial loop(std::size_t v) const {
        auto it = loops_.find(v);
        return it == loops_.end() ? Polynomial::zero(field_, nvars_) : it->second;
    }

    void set_edge(std::size_t u, std::size_t v, const Polynomial& w) {
        check_vertex_(u);
        check_vertex_(v);
        if (u == v) throw std::invalid_argument("loops are set via set_loop");
        auto key = ordered_(u, v);
        if (w.is_zero())
            edges_.erase(key);
        else
            edges_.insert_or_assign(key, w);
    }

    void remove_edge(std::size_t u, std::size_t v) { edges_.erase(ordered_(u, v)); }

    Polynomial edge(std::size_t u, std::size_t v) const {
        auto it = edges_.find(ordered_(u, v));
        return it == edges_.end() ? Polynomial::zero(field_, nvars_) : it->second;
    }

    const std::map<std::size_t, Polynomial>& loops() const { return loops_; }
    const std::map<std::pair<std::size_t, std::size_t>, Polynomial>& edges() const {
        return edges_;
    }

    PolyMatrix adjacency() const {
        PolyMatrix m(field_, nvars_, n_);
        for (const auto& [v, w] : loops_) m.set(v, v, w);
        for (const auto& [e, w] : edges_) m.set(e.first, e.second, w);
        return m;
    }

    /// Requires every weight to lie in F union {x_1, ..., x_m}.
    SdrMatrix to_sdr() const {
        SdrMatrix m(field_, nvars_, n_);
        auto convert = [&](const Polynomial& p) {
            if (p.is_constant()) return SdrEntry::constant(p.constant_term());
            if (!detail::is_simple_weight(p))
                throw InvalidEntryError("weight is neither a constant nor a variable: " +
                                        format_polynomial(p, default_var_names(nvars_)));
            unsigned var =
                static_cast<unsigned>(__builtin_ctzll(p.terms().begin()->first.mask()));
            return SdrEntry::variable(field_, var);
        };
        for (const auto& [v, w] : loops_) m.set(v, v, convert(w));
        for (const auto& [e, w] : edges_) m.set(e.first, e.second, convert(w));
        return m;
    }

    static WeightedGraph from_matrix(const PolyMatrix& m) {
        WeightedGraph g(m.field(), m.nvars(), m.n());
        for (std::size_t i = 0; i < m.n(); ++i) {
            g.set_loop(i, m.entry(i, i));
            for (std::size_t j = i + 1; j < m.n(); ++j) g.set_edge(i, j, m.entry(i, j));
        }
        return g;
    }

    /// Induced subgraph after deleting the given vertices (renumbered in
    /// order).
    WeightedGraph without(std::vector<std::size_t> removed) const {
        std::vector<bool> gone(n_, false);
        for (auto v : removed) {
            check_vertex_(v);
            gone[v] = true;
        }
        std::vector<std::size_t> newid(n_, 0);
        std::size_t next = 0;
        for (std::size_t v = 0; v < n_; ++v)
            if (!gone[v]) newid[v] = next++;
        WeightedGraph g(field_, nvars_, next);
        for (const auto& [v, w] : loops_)
            if (!gone[v]) g.set_loop(newid[v], w);
        for (const auto& [e, w] : edges_)
            if (!gone[e.first] && !gone[e.second]) g.set_edge(newid[e.first], newid[e.second], w);
        return g;
    }

    /// Determinant as the weighted sum over partial matchings: a matching
    /// contributes the squares of its edge weights times the loop weights of
    /// the uncovered vertices (characteristic 2). Enumerates matchings with
    /// pruning, so it stays fast on the sparse gadget graphs even when the
    /// dense determinant guards are far exceeded.
    Polynomial determinant(std::uint64_t max_branches = std::uint64_t{1} << 22) const {
        if (field_.characteristic() != 2)
            throw UnsupportedCharacteristicError("matching determinant requires characteristic 2");
        std::vector<std::vector<std::pair<std::size_t, const Polynomial*>>> adj(n_);
        for (const auto& [e, w] : edges_) {
            adj[e.first].emplace_back(e.second, &w);
            adj[e.second].emplace_back(e.first, &w);
        }
        Polynomial total = Polynomial::zero(field_, nvars_);
        Polynomial acc = Polynomial::constant(field_.one(), nvars_);
        std::vector<bool> covered(n_, false);
        std::uint64_t branches = 0;
        auto rec = [&](auto&& self, std::size_t first) -> void {
            while (first < n_ && covered[first]) ++first;
            if (first == n_) {
                total += acc;
                return;
            }
            if (++branches > max_branches)
                throw TooLargeError("matching enumeration exceeded its branch budget");
            covered[first] = true;
            auto lit = loops_.find(first);
            if (lit != loops_.end()) {
                Polynomial saved = acc;
                acc *= lit->second;
                self(self, first + 1);
                acc = std::move(saved);
            }
            for (const auto& [u, w] : adj[first]) {
                if (covered[u]) continue;
                covered[u] = true;
                Polynomial saved = acc;
                acc *= w->square();
                self(self, first + 1);
                acc = std::move(saved);
                covered[u] = false;
            }
            covered[first] = false;
        };
        rec(rec, 0);
        return total;
    }

    std::string to_dot(const std::vector<std::string>& names) const {
        std::string out = "graph G {\n";
        for (std::size_t v = 0; v < n_; ++v) out += "  v" + std::to_string(v) + ";\n";
        for (const auto& [v, w] : loops_)
            out += "  v" + std::to_string(v) + " -- v" + std::to_string(v) + " [label=\"" +
                   format_polynomial(w, names) + "\"];\n";
        for (const auto& [e, w] : edges_)
            out += "  v" + std::to_string(e.first) + " -- v" + std::to_string(e.second) +
                   " [label=\"" + format_polynomial(w, names) + "\"];\n";
        out += "}\n";
        return out;
    }

private:
    static std::pair<std::size_t, std::size_t> ordered_(std::size_t u, std::size_t v) {
        return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    }
    void check_vertex_(std::size_t v) const {
        if (v >= n_) throw std::out_of_range("vertex index out of range");
    }

    Field field_;
    unsigned nvars_;
    std::size_t n_;
    std::map<std::size_t, Polynomial> loops_;
    std::map<std::pair<std::size_t, std::size_t>, Polynomial> edges_;
};

/// Graph representing P^2, with distinguished vertices s and t such that
/// det(G) = P^2, det(G \ {s,t}) = 1 and det(G \ {s}) = det(G \ {t}) = 0.
struct SquareGadget {
    WeightedGraph graph;
    std::size_t s;
    std::size_t t;
};

/// Builds the square gadget of P: one chain per monomial c*x^a, made of
/// deg(x^a)+1 vertex pairs (the coefficient pair first, then one pair per
/// variable occurrence in ascending order) linked by weight-1 edges, all
/// chains sharing the merged extremities s and t.
inline SquareGadget gadget_square(const Polynomial& p) {
    WeightedGraph g(p.field(), p.nvars());
    std::size_t s = g.add_vertex();
    std::size_t t = g.add_vertex();
    for (const auto& [mono, coeff] : p.terms()) {
        std::vector<Polynomial> word;
        word.push_back(Polynomial::constant(coeff, p.nvars()));
        for (unsigned i = 0; i < mono.width(); ++i)
            for (std::uint32_t rep = 0; rep < mono.exponent(i); ++rep)
                word.push_back(Polynomial::variable(p.field(), p.nvars(), i));

        Polynomial one = Polynomial::constant(p.field().one(), p.nvars());
        std::size_t prev = s;
        for (std::size_t k = 0; k < word.size(); ++k) {
            std::size_t a = prev;
            std::size_t b = (k + 1 == word.size()) ? t : g.add_vertex();
            g.set_edge(a, b, word[k]);
            if (k + 1 < word.size()) {
                std::size_t link = g.add_vertex();
                g.set_edge(b, link, one);
                prev = link;
            }
        }
    }
    return SquareGadget{std::move(g), s, t};
}

namespace detail {

struct WheelSpoke {
    Polynomial weight;                 // spoke edge weight
    std::optional<unsigned> variable;  // loop x_i on the rim, or a weight-1 loop if absent
};

/// Center vertex c, and per spoke i vertices a_i, b_i with edges c-a_i
/// (spoke weight), a_i-b_i (weight 1) and the rim loop on b_i. Satisfies
/// det = sum over spokes of loop * weight^2 and det(W \ {c}) = 1.
inline WeightedGraph wheel_graph(const Field& field, unsigned nvars,
                                 const std::vector<WheelSpoke>& spokes, std::size_t& center_out) {
    WeightedGraph g(field, nvars);
    std::size_t center = g.add_vertex();
    Polynomial one = Polynomial::constant(field.one(), nvars);
    for (const auto& spoke : spokes) {
        std::size_t a = g.add_vertex();
        std::size_t b = g.add_vertex();
        g.set_edge(center, a, spoke.weight);
        g.set_edge(a, b, one);
        g.set_loop(b, spoke.variable ? Polynomial::variable(field, nvars, *spoke.variable) : one);
    }
    center_out = center;
    return g;
}

}  // namespace detail

/// The wheel for a linear form: det = lambda_0^2 + x_1 lambda_1^2 + ... +
/// x_m lambda_m^2 on 2(m+1)+1 vertices. Zero coefficients keep their spokes
/// so the indexing stays uniform.
inline SdrMatrix gadget_wheel(const std::vector<FieldElement>& lambda) {
    if (lambda.empty()) throw std::invalid_argument("wheel needs at least the constant direction");
    const Field& f = lambda.front().field();
    unsigned m = static_cast<unsigned>(lambda.size() - 1);
    std::vector<detail::WheelSpoke> spokes;
    for (unsigned i = 0; i < lambda.size(); ++i) {
        detail::WheelSpoke s{Polynomial::constant(lambda[i], m),
                             i == 0 ? std::nullopt : std::optional<unsigned>(i - 1)};
        spokes.push_back(std::move(s));
    }
    std::size_t center = 0;
    return detail::wheel_graph(f, m, spokes, center).to_sdr();
}

/// SDR of a linear polynomial: a wheel with lambda_i = sqrt(coefficient of
/// x_i), keeping only the directions that occur in L. Requires
/// characteristic 2 (every coefficient is a quadratic residue there).
inline SdrMatrix linear_sdr(const Polynomial& linear) {
    if (!linear.is_linear()) throw std::invalid_argument("linear_sdr requires a linear polynomial");
    if (linear.field().characteristic() != 2)
        throw UnsupportedCharacteristicError("linear_sdr requires characteristic 2");
    const Field& f = linear.field();
    std::vector<detail::WheelSpoke> spokes;
    FieldElement c0 = linear.constant_term();
    if (!c0.is_zero())
        spokes.push_back({Polynomial::constant(c0.sqrt(), linear.nvars()), std::nullopt});
    for (unsigned i = 0; i < linear.nvars(); ++i) {
        FieldElement ci = linear.coefficient(Monomial::variable(i));
        if (!ci.is_zero())
            spokes.push_back({Polynomial::constant(ci.sqrt(), linear.nvars()), i});
    }
    std::size_t center = 0;
    return detail::wheel_graph(f, linear.nvars(), spokes, center).to_sdr();
}

/// Block-diagonal join: det = det(M) * det(N) (disjoint union of the graphs).
inline SdrMatrix gadget_product(const SdrMatrix& m, const SdrMatrix& n) {
    return block_diag(m, n);
}

/// Splices the square gadget S between u and v in place of the edge (u, v):
/// det becomes det(G - e) + P^2 * det(G \ {u, v}), so substituting the
/// gadget of the edge's own weight preserves the determinant. The old weight
/// is discarded.
inline WeightedGraph gadget_replace_edge(const WeightedGraph& g, std::size_t u, std::size_t v,
                                         const SquareGadget& gadget) {
    if (u == v) throw std::invalid_argument("cannot replace a loop by an edge gadget");
    WeightedGraph out = g;
    out.remove_edge(u, v);
    std::vector<std::size_t> mapped(gadget.graph.size());
    for (std::size_t w = 0; w < gadget.graph.size(); ++w) {
        if (w == gadget.s)
            mapped[w] = u;
        else if (w == gadget.t)
            mapped[w] = v;
        else
            mapped[w] = out.add_vertex();
    }
    for (const auto& [w, weight] : gadget.graph.loops()) {
        if (out.has_loop(mapped[w]))
            throw InvalidEntryError("loop collision while merging gadget vertices");
        out.set_loop(mapped[w], weight);
    }
    for (const auto& [e, weight] : gadget.graph.edges()) {
        std::size_t a = mapped[e.first], b = mapped[e.second];
        if (!out.edge(a, b).is_zero())
            throw InvalidEntryError("edge collision while merging gadget vertices");
        out.set_edge(a, b, weight);
    }
    return out;
}

/// Replaces the loop on v by a wheel whose center is merged into v. The
/// wheel must satisfy det(W) = loop weight and det(W \ {center}) = 1; the
/// determinant of the graph is then unchanged.
inline WeightedGraph gadget_replace_loop(const WeightedGraph& g, std::size_t v,
                                         const WeightedGraph& wheel, std::size_t center) {
    if (!g.has_loop(v)) throw std::invalid_argument("vertex carries no loop");
    WeightedGraph out = g;
    out.remove_loop(v);
    std::vector<std::size_t> mapped(wheel.size());
    for (std::size_t w = 0; w < wheel.size(); ++w)
        mapped[w] = (w == center) ? v : out.add_vertex();
    for (const auto& [w, weight] : wheel.loops()) {
        if (out.has_loop(mapped[w]))
            throw InvalidEntryError("loop collision while merging wheel vertices");
        out.set_loop(mapped[w], weight);
    }
    for (const auto& [e, weight] : wheel.edges()) {
        std::size_t a = mapped[e.first], b = mapped[e.second];
        if (!out.edge(a, b).is_zero())
            throw InvalidEntryError("edge collision while merging wheel vertices");
        out.set_edge(a, b, weight);
    }
    return out;
}

/// Quadratic form P_0^2 + x_1 P_1^2 + ... + x_m P_m^2, stored by its
/// component list (P_0, P_1, ..., P_m).
class QuadraticForm {
public:
    explicit QuadraticForm(std::vector<Polynomial> components)
        : components_(std::move(components)) {
        if (components_.empty()) throw std::invalid_argument("empty quadratic form");
        unsigned nvars = components_.front().nvars();
        if (components_.size() != nvars + 1)
            throw std::invalid_argument("quadratic form needs nvars+1 components");
        for (const auto& c : components_)
            if (c.nvars() != nvars || c.field() != components_.front().field())
                throw std::invalid_argument("component context mismatch");
    }

    const std::vector<Polynomial>& components() const { return components_; }
    const Field& field() const { return components_.front().field(); }
    unsigned nvars() const { return components_.front().nvars(); }

    /// The polynomial the form denotes.
    Polynomial denote() const {
        Polynomial acc = components_[0].square();
        for (unsigned i = 1; i < components_.size(); ++i)
            acc += Polynomial::variable(field(), nvars(), i - 1) * components_[i].square();
        return acc;
    }

    bool is_constant_form() const {
        if (!components_[0].is_constant()) return false;
        for (unsigned i = 1; i < components_.size(); ++i)
            if (!components_[i].is_zero()) return false;
        return true;
    }

    /// Index i when the form denotes exactly the bare variable x_i.
    std::optional<unsigned> bare_variable() const {
        if (!components_[0].is_zero()) return std::nullopt;
        std::optional<unsigned> found;
        for (unsigned i = 1; i < components_.size(); ++i) {
            if (components_[i].is_zero()) continue;
            if (found || !components_[i].is_constant() || !components_[i].constant_term().is_one())
                return std::nullopt;
            found = i - 1;
        }
        return found;
    }

private:
    std::vector<Polynomial> components_;
};

/// Generalized SDR: symmetric polynomial off-diagonal entries; each diagonal
/// entry is a constant or a quadratic form.
class GsdrMatrix {
public:
    using DiagEntry = std::variant<FieldElement, QuadraticForm>;

    GsdrMatrix(Field field, unsigned nvars, std::size_t n)
        : field_(std::move(field)),
          nvars_(nvars),
          off_(n, n, Polynomial::zero(field_, nvars_)),
          diag_(n, DiagEntry(field_.zero())) {}

    const Field& field() const { return field_; }
    unsigned nvars() const { return nvars_; }
    std::size_t n() const { return diag_.size(); }

    void set_offdiag(std::size_t i, std::size_t j, const Polynomial& p) {
        if (i == j) throw std::invalid_argument("use set_diag_* for diagonal entries");
        if (p.field() != field_ || p.nvars() != nvars_)
            throw std::invalid_argument("entry context mismatch");
        off_.at(i, j) = p;
        off_.at(j, i) = p;
    }

    void set_diag_constant(std::size_t i, const FieldElement& c) {
        if (c.field() != field_) throw FieldMismatchError("constant from a different field");
        diag_[i] = c;
    }

    void set_diag_form(std::size_t i, QuadraticForm form) {
        if (form.field() != field_ || form.nvars() != nvars_)
            throw std::invalid_argument("form context mismatch");
        diag_[i] = std::move(form);
    }

    const Polynomial& offdiag(std::size_t i, std::size_t j) const { return off_.at(i, j); }
    const DiagEntry& diag(std::size_t i) const { return diag_[i]; }

    Polynomial diag_poly(std::size_t i) const {
        if (const auto* c = std::get_if<FieldElement>(&diag_[i]))
            return Polynomial::constant(*c, nvars_);
        return std::get<QuadraticForm>(diag_[i]).denote();
    }

    PolyMatrix to_poly_matrix(Ctx ctx = nullptr) const {
        PolyMatrix m(field_, nvars_, n(), std::move(ctx));
        for (std::size_t i = 0; i < n(); ++i) {
            m.set(i, i, diag_poly(i));
            for (std::size_t j = i + 1; j < n(); ++j) m.set(i, j, off_.at(i, j));
        }
        return m;
    }

private:
    Field field_;
    unsigned nvars_;
    Matrix<Polynomial> off_;
    std::vector<DiagEntry> diag_;
};

/// Compiles a gSDR down to an SDR of the same determinant: quadratic-form
/// loops become wheels (their spokes carrying the component polynomials) and
/// every residual edge weight outside F union {x} is replaced by its square
/// gadget.
inline SdrMatrix gsdr_to_sdr(const GsdrMatrix& a) {
    const Field& f = a.field();
    unsigned nvars = a.nvars();
    WeightedGraph g(f, nvars, a.n());
    for (std::size_t i = 0; i < a.n(); ++i)
        for (std::size_t j = i + 1; j < a.n(); ++j) g.set_edge(i, j, a.offdiag(i, j));

    std::vector<std::pair<std::size_t, QuadraticForm>> wheels;
    for (std::size_t i = 0; i < a.n(); ++i) {
        if (const auto* c = std::get_if<FieldElement>(&a.diag(i))) {
            g.set_loop(i, Polynomial::constant(*c, nvars));
            continue;
        }
        const auto& form = std::get<QuadraticForm>(a.diag(i));
        if (form.is_constant_form()) {
            g.set_loop(i, Polynomial::constant(form.components()[0].constant_term().square(), nvars));
        } else if (auto var = form.bare_variable()) {
            g.set_loop(i, Polynomial::variable(f, nvars, *var));
        } else {
            g.set_loop(i, form.denote());
            wheels.emplace_back(i, form);
        }
    }

    for (const auto& [v, form] : wheels) {
        std::vector<detail::WheelSpoke> spokes;
        if (!form.components()[0].is_zero())
            spokes.push_back({form.components()[0], std::nullopt});
        for (unsigned i = 1; i < form.components().size(); ++i)
            if (!form.components()[i].is_zero())
                spokes.push_back({form.components()[i], i - 1});
        std::size_t center = 0;
        WeightedGraph wheel = detail::wheel_graph(f, nvars, spokes, center);
        g = gadget_replace_loop(g, v, wheel, center);
    }

    // replace non-simple edge weights by their square gadgets; gadget
    // internals are always simple, so one sweep reaches a fixed point
    bool again = true;
    while (again) {
        again = false;
        for (const auto& [e, w] : g.edges()) {
            if (detail::is_simple_weight(w)) continue;
            g = gadget_replace_edge(g, e.first, e.second, gadget_square(w));
            again = true;
            break;  // edge map was invalidated
        }
    }
    return g.to_sdr();
}

}  // namespace symdet
