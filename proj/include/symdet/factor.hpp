#pragma once

#include <optional>
#include <vector>

#include "symdet/gadgets.hpp"
#include "symdet/symmat.hpp"

namespace symdet {

/// One recorded reduction step: the input was Mult_b(factor * rest).
struct TraceStep {
    Polynomial factor;  // linear, or a primitive monomial for the Mult_1 steps
    int bit;            // 0 or 1, selecting the broadcast tuple
};

/// Record of a successful factorizability run. Replaying the steps from the
/// terminal polynomial reproduces the input exactly.
struct FactorTrace {
    std::vector<TraceStep> steps;
    Polynomial terminal;

    Polynomial replay() const {
        Polynomial r = terminal;
        for (std::size_t i = steps.size(); i-- > 0;) {
            const auto& s = steps[i];
            std::vector<FieldElement> ell(r.nvars(),
                                          r.field().element(static_cast<std::uint64_t>(s.bit)));
            r = (s.factor * r).mult_reduce(ell);
        }
        return r;
    }
};

namespace detail {

inline std::vector<FieldElement> broadcast_tuple(const Field& f, unsigned m, int bit) {
    return std::vector<FieldElement>(m, f.element(static_cast<std::uint64_t>(bit)));
}

/// Minimal monomial (graded order) over the occurring variables whose
/// coefficient in p is zero. Exists whenever p is not full.
inline Monomial minimal_absent_monomial(const Polynomial& p) {
    std::uint64_t support = p.support_mask();
    std::vector<unsigned> vars;
    for (unsigned i = 0; i < p.nvars(); ++i)
        if (support & (std::uint64_t{1} << i)) vars.push_back(i);
    std::vector<Monomial> candidates;
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << vars.size()); ++sub) {
        std::uint64_t mask = 0;
        for (std::size_t t = 0; t < vars.size(); ++t)
            if ((sub >> t) & 1) mask |= std::uint64_t{1} << vars[t];
        candidates.push_back(Monomial::from_mask(mask));
    }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& m : candidates)
        if (p.coefficient(m).is_zero()) return m;
    throw std::logic_error("polynomial is full: no absent monomial");
}

}  // namespace detail

/// Prep: reduces a multilinear polynomial to one that is linear or has
/// valuation exactly 1, preserving factorizability. Each transformation
/// appends its inverting pair (L, b) to the trace: full polynomials are
/// multiplied by (p_i x_i + p_0) and reduced modulo I(0) (recording
/// (L/p_0^2, 0)); otherwise a primitive monomial multiplication modulo I(1)
/// fixes the valuation (recording (x^a, 1)).
inline Polynomial prep(Polynomial p, std::vector<TraceStep>* trace = nullptr) {
    if (!p.is_multilinear()) throw std::invalid_argument("prep requires a multilinear polynomial");
    const Field& f = p.field();
    unsigned m = p.nvars();

    while (true) {
        if (p.is_linear()) return p;

        if (p.is_full()) {
            unsigned i = static_cast<unsigned>(__builtin_ctzll(p.support_mask()));
            FieldElement pi = p.coefficient(Monomial::variable(i));
            FieldElement p0 = p.constant_term();
            Polynomial lfac(f, m);
            lfac.add_term(Monomial::variable(i), pi);
            lfac.add_term(Monomial::one(), p0);
            if (trace)
                trace->push_back({lfac * p0.square().inverse(), 0});
            p = (p * lfac).mult_reduce(detail::broadcast_tuple(f, m, 0));
            continue;
        }

        unsigned val = *p.valuation();
        if (val == 1) return p;

        Monomial alpha = Monomial::one();
        if (val == 0) {
            alpha = detail::minimal_absent_monomial(p);
        } else {
            // minimal monomial, divided by its highest variable
            Monomial beta = p.terms().begin()->first;
            unsigned hi = beta.width() - 1;  // highest occurring index in beta
            alpha = beta.divided_by_variable(hi);
        }
        if (trace) trace->push_back({Polynomial::monomial(f.one(), alpha, m), 1});
        return (Polynomial::monomial(f.one(), alpha, m) * p)
            .mult_reduce(detail::broadcast_tuple(f, m, 1));
    }
}

/// IsFactor with trace recording: decides whether p = Mult_{l^2}(L_1...L_k)
/// for linear L_i (equivalently, whether p has an SDR). Returns the trace on
/// success.
inline std::optional<FactorTrace> is_factor_traced(Polynomial p) {
    if (!p.is_multilinear())
        throw std::invalid_argument("is_factor requires a multilinear polynomial");
    if (p.field().characteristic() != 2)
        throw UnsupportedCharacteristicError("is_factor requires characteristic 2");
    const Field& f = p.field();
    unsigned m = p.nvars();

    FactorTrace trace{{}, p};
    while (true) {
        p = prep(std::move(p), &trace.steps);
        if (p.is_linear()) {
            trace.terminal = p;
            return trace;
        }

        // p has valuation 1: pick the lowest nonzero monomial a_i x_i of lin(p)
        Polynomial linear = p.lin();
        unsigned i = static_cast<unsigned>(__builtin_ctzll(linear.support_mask()));
        FieldElement ai = linear.coefficient(Monomial::variable(i));
        Polynomial p0 = p.partial(i);
        Polynomial candidate = linear * ai.inverse();
        if (p != (candidate * p0).mult_reduce(detail::broadcast_tuple(f, m, 0)))
            return std::nullopt;
        trace.steps.push_back({candidate, 0});
        p = std::move(p0);
    }
}

inline bool is_factor(const Polynomial& p) { return is_factor_traced(p).has_value(); }

/// Merge_b: an SDR of Mult_b(P*Q) from SDRs of the multilinear P and Q.
/// Block-diagonal join, diagonal deduplication (det is then multilinear),
/// Clean over the broadcast tuple, and lift back to entries in F union {x}.
inline SdrMatrix merge(const SdrMatrix& mp, const SdrMatrix& mq, int bit) {
    PolyMatrix joined = to_poly_matrix(block_diag(mp, mq));
    PolyMatrix dedup = mat_dedup_diagonal(joined);
    Ctx ctx = make_context(mp.field(), mp.nvars(), static_cast<std::uint64_t>(bit));
    PolyMatrix cleaned = mat_clean(dedup.with_ctx(ctx));

    SdrMatrix out(mp.field(), mp.nvars(), cleaned.n());
    for (std::size_t i = 0; i < cleaned.n(); ++i)
        for (std::size_t j = i; j < cleaned.n(); ++j) {
            const Polynomial& e = cleaned.entry(i, j);
            if (e.is_constant()) {
                out.set_constant(i, j, e.constant_term());
            } else if (detail::is_simple_weight(e)) {
                out.set_variable(
                    i, j, static_cast<unsigned>(__builtin_ctzll(e.terms().begin()->first.mask())));
            } else {
                throw std::logic_error("merge produced a non-SDR entry");
            }
        }
    return out;
}

namespace detail {

/// SDR of a primitive multilinear monomial: single-variable wheels folded
/// with Merge_1 (the bit is irrelevant for distinct variables).
inline SdrMatrix monomial_sdr(const Monomial& mono, const Field& f, unsigned m) {
    std::vector<unsigned> vars;
    for (unsigned i = 0; i < mono.width(); ++i)
        if (mono.exponent(i)) vars.push_back(i);
    if (vars.empty()) {
        SdrMatrix one(f, m, 1);
        one.set_constant(0, 0, f.one());
        return one;
    }
    SdrMatrix acc = linear_sdr(Polynomial::variable(f, m, vars[0]));
    for (std::size_t t = 1; t < vars.size(); ++t)
        acc = merge(linear_sdr(Polynomial::variable(f, m, vars[t])), acc, 1);
    return acc;
}

inline SdrMatrix terminal_sdr(const Polynomial& linear) {
    if (linear.is_constant()) {
        SdrMatrix c(linear.field(), linear.nvars(), 1);
        c.set_constant(0, 0, linear.constant_term());
        return c;
    }
    return linear_sdr(linear);
}

}  // namespace detail

/// SymDet: builds an SDR of a multilinear polynomial, or nullopt when none
/// exists. The factor trace is replayed backwards through Merge, so the
/// final determinant equals the input exactly.
inline std::optional<SdrMatrix> sym_det(const Polynomial& p) {
    auto trace = is_factor_traced(p);
    if (!trace) return std::nullopt;

    SdrMatrix acc = detail::terminal_sdr(trace->terminal);
    for (std::size_t i = trace->steps.size(); i-- > 0;) {
        const TraceStep& step = trace->steps[i];
        SdrMatrix n = step.factor.is_linear()
                          ? detail::terminal_sdr(step.factor)
                          : detail::monomial_sdr(step.factor.terms().begin()->first, p.field(),
                                                 p.nvars());
        acc = merge(n, acc, step.bit);
    }
    return acc;
}

}  // namespace symdet
