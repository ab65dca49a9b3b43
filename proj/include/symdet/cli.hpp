#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "symdet/extract.hpp"
#include "symdet/factor.hpp"
#include "symdet/matrix_json.hpp"

namespace symdet::cli {

/// Parses `p[^k[:modulus-int]]`, e.g. "2", "2^4", "2^8:283".
inline Field parse_field_spec(const std::string& spec) {
    std::uint64_t p = 0;
    unsigned k = 1;
    std::uint64_t modulus = 0;
    bool has_modulus = false;

    std::size_t caret = spec.find('^');
    std::string p_part = spec.substr(0, caret);
    if (caret != std::string::npos) {
        std::string rest = spec.substr(caret + 1);
        std::size_t colon = rest.find(':');
        k = static_cast<unsigned>(std::stoul(rest.substr(0, colon)));
        if (colon != std::string::npos) {
            modulus = std::stoull(rest.substr(colon + 1));
            has_modulus = true;
        }
    }
    p = std::stoull(p_part);
    return has_modulus ? Field::gf(p, k, modulus) : Field::gf(p, k);
}

/// Parses `c1,c2,...,cm`; the shorthands "0" and "1" broadcast to m entries.
inline std::vector<FieldElement> parse_ell_spec(const std::string& spec, const Field& field,
                                                unsigned m) {
    if (spec == "0" || spec == "1")
        return std::vector<FieldElement>(m, field.element(spec == "1" ? 1 : 0));
    std::vector<FieldElement> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(field.element(std::stoull(item)));
    if (out.size() != m)
        throw std::invalid_argument("--ell needs " + std::to_string(m) + " entries, got " +
                                    std::to_string(out.size()));
    return out;
}

namespace detail {

inline std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
}

/// Exact determinant of a loaded matrix: the polynomial-time evaluation
/// route when the matrix is SDR-shaped, the dense subset oracle otherwise.
inline Polynomial loaded_determinant(const LoadedMatrix& lm, const DetGuards& guards) {
    if (lm.field.characteristic() == 2) {
        if (auto sdr = try_to_sdr(lm)) {
            try {
                return det_eval_multilinear(*sdr);
            } catch (const InvalidEntryError&) {
                // off-diagonal variables or repeated diagonal: fall through
            }
        }
    }
    return det_subset(lm.grid, lm.field, static_cast<unsigned>(lm.vars.size()), guards);
}

struct PolyInput {
    Field field;
    std::vector<std::string> names;
    Polynomial poly;
};

inline PolyInput parse_poly_arg(const std::string& expr, const std::string& field_spec,
                                const std::string& vars_csv) {
    Field f = parse_field_spec(field_spec);
    if (!vars_csv.empty()) {
        auto names = split_names(vars_csv);
        return {f, names, parse_polynomial(expr, f, names)};
    }
    VarTable vt;
    Polynomial p = parse_polynomial(expr, f, vt);
    return {f, vt.names(), p};
}

}  // namespace detail

/// Entry point shared by the binary and the tests. Decision commands exit
/// 0 (yes) / 1 (no); parse failures and guard violations exit 2.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"symmetric determinantal representations over fields of characteristic 2"};
    app.require_subcommand(1);

    std::string expr, field_spec = "2", vars_csv, ell_spec, out_path, dot_path, witness_path,
                matrix_path;
    unsigned census_m = 0;
    unsigned jobs = 1;
    std::uint64_t seed = 0;
    bool list_nonfactorizable = false;
    DetGuards guards;

    auto add_field_vars = [&](CLI::App* cmd) {
        cmd->add_option("--field", field_spec, "field as p[^k[:modulus-int]] (default 2)");
        cmd->add_option("--vars", vars_csv, "fix variable order, e.g. x,y,z");
    };
    auto add_guards = [&](CLI::App* cmd) {
        cmd->add_option("--max-involution", guards.involution_max,
                        "involution determinant size guard");
        cmd->add_option("--max-subset", guards.subset_max, "subset determinant size guard");
        cmd->add_option("--max-pfaffian", guards.pfaffian_max, "pfaffian size guard");
    };
    app.add_option("--seed", seed, "seed for randomized operations (reserved)");

    CLI::App* factor_cmd = app.add_subcommand("factor", "decide factorizability (exit 0 yes, 1 no)");
    factor_cmd->add_option("expr", expr, "multilinear polynomial")->required();
    add_field_vars(factor_cmd);

    CLI::App* sdr_cmd = app.add_subcommand("sdr", "build a symmetric determinantal representation");
    sdr_cmd->add_option("expr", expr, "multilinear polynomial")->required();
    add_field_vars(sdr_cmd);
    sdr_cmd->add_option("-o,--output", out_path, "write the matrix JSON here");
    sdr_cmd->add_option("--emit-dot", dot_path, "also render the graph in DOT format");

    CLI::App* verify_cmd = app.add_subcommand("verify", "recompute a matrix determinant and compare");
    verify_cmd->add_option("matrix", matrix_path, "matrix JSON file")->required();
    verify_cmd->add_option("expr", expr, "expected determinant")->required();
    add_guards(verify_cmd);

    CLI::App* extract_cmd =
        app.add_subcommand("extract", "factor pi(det M) into linear ring elements");
    extract_cmd->add_option("matrix", matrix_path, "matrix JSON file")->required();
    extract_cmd->add_option("--ell", ell_spec, "tuple c1,...,cm (0/1 broadcast)")->required();
    add_guards(extract_cmd);

    CLI::App* reduce_cmd = app.add_subcommand("reduce", "apply the multilinear reduction Mult_l");
    reduce_cmd->add_option("expr", expr, "polynomial")->required();
    reduce_cmd->add_option("--ell", ell_spec, "tuple c1,...,cm (0/1 broadcast)")->required();
    add_field_vars(reduce_cmd);

    CLI::App* census_cmd =
        app.add_subcommand("census", "count the factorizable elements of R(l)");
    census_cmd->add_option("-m,--nvars", census_m, "number of variables")->required();
    census_cmd->add_option("--ell", ell_spec, "tuple (default all-ones)");
    census_cmd->add_option("--field", field_spec, "field as p[^k[:modulus-int]]");
    census_cmd->add_flag("--list", list_nonfactorizable, "print the non-factorizable elements");
    census_cmd->add_option("--jobs", jobs, "worker threads for the listing pass");

    CLI::App* alt_cmd = app.add_subcommand("alternating", "alternating determinantal representation");
    alt_cmd->add_option("expr", expr, "polynomial")->required();
    add_field_vars(alt_cmd);
    alt_cmd->add_option("--witness", witness_path, "matrix JSON with det N = sqrt(P)");
    alt_cmd->add_option("-o,--output", out_path, "write the block matrix JSON here");
    add_guards(alt_cmd);

    CLI::App* pf_cmd = app.add_subcommand("pfaffian", "print the Pfaffian of an alternating matrix");
    pf_cmd->add_option("matrix", matrix_path, "matrix JSON file")->required();
    add_guards(pf_cmd);

    CLI::App* dot_cmd = app.add_subcommand("emit-dot", "render a matrix as a weighted graph");
    dot_cmd->add_option("matrix", matrix_path, "matrix JSON file")->required();
    dot_cmd->add_option("-o,--output", out_path, "write the DOT text here");

    std::vector<std::string> argv_store;
    argv_store.push_back("symdet");
    for (const auto& a : args) argv_store.push_back(a);
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*factor_cmd) {
            auto in = detail::parse_poly_arg(expr, field_spec, vars_csv);
            auto trace = is_factor_traced(in.poly);
            if (!trace) {
                out << "factorizable: no\n";
                return 1;
            }
            out << "factorizable: yes\n";
            for (const auto& step : trace->steps)
                out << "step: (" << format_polynomial(step.factor, in.names) << ", " << step.bit
                    << ")\n";
            out << "terminal: " << format_polynomial(trace->terminal, in.names) << "\n";
            return 0;
        }

        if (*sdr_cmd) {
            auto in = detail::parse_poly_arg(expr, field_spec, vars_csv);
            auto m = sym_det(in.poly);
            if (!m) {
                out << "not representable\n";
                return 1;
            }
            detail::write_text(out_path, matrix_to_json(*m, in.names).dump(2) + "\n", out);
            if (!out_path.empty()) out << "wrote " << out_path << " (n = " << m->n() << ")\n";
            if (sdr_cmd->count("--emit-dot")) {
                WeightedGraph g = WeightedGraph::from_matrix(to_poly_matrix(*m));
                detail::write_text(dot_path, g.to_dot(in.names), out);
            }
            return 0;
        }

        if (*verify_cmd) {
            LoadedMatrix lm = matrix_from_json(detail::read_json_file(matrix_path),
                                               MatrixShape::Symmetric);
            Polynomial expected = parse_polynomial(expr, lm.field, lm.vars);
            Polynomial d = detail::loaded_determinant(lm, guards);
            out << "determinant: " << format_polynomial(d, lm.vars) << "\n";
            bool ok = d == expected;
            out << "match: " << (ok ? "true" : "false") << "\n";
            return ok ? 0 : 1;
        }

        if (*extract_cmd) {
            LoadedMatrix lm = matrix_from_json(detail::read_json_file(matrix_path),
                                               MatrixShape::Symmetric);
            unsigned m = static_cast<unsigned>(lm.vars.size());
            Ctx ctx = make_context(lm.field, parse_ell_spec(ell_spec, lm.field, m));
            PolyMatrix pm = PolyMatrix::from_grid(lm.field, m, lm.grid);
            RingFactorization fac = extract_factorization(pm, ctx);
            for (const auto& f : fac.factors)
                out << "factor: " << format_polynomial(f.rep(), lm.vars) << "\n";
            out << "constant: " << fac.constant.value() << "\n";
            bool ok = fac.verify(detail::loaded_determinant(lm, guards), ctx);
            out << "verified: " << (ok ? "true" : "false") << "\n";
            return ok ? 0 : 1;
        }

        if (*reduce_cmd) {
            auto in = detail::parse_poly_arg(expr, field_spec, vars_csv);
            auto ell = parse_ell_spec(ell_spec, in.field, in.poly.nvars());
            out << format_polynomial(in.poly.mult_reduce(ell), in.names) << "\n";
            return 0;
        }

        if (*census_cmd) {
            Field f = parse_field_spec(field_spec);
            if (ell_spec.empty()) ell_spec = "1";
            Ctx ctx = make_context(f, parse_ell_spec(ell_spec, f, census_m));
            std::uint64_t total = ring_size(ctx);
            LinearClosure closure(ctx);
            std::uint64_t inside = closure.size();
            out << total << " elements, " << inside << " factorizable, " << (total - inside)
                << " not\n";
            if (list_nonfactorizable) {
                auto names = default_var_names(census_m);
                std::vector<std::vector<std::uint64_t>> found(std::max(jobs, 1u));
                auto scan = [&](unsigned worker, std::uint64_t lo, std::uint64_t hi) {
                    for (std::uint64_t key = lo; key < hi; ++key)
                        if (!closure.contains(decode_element(ctx, key)))
                            found[worker].push_back(key);
                };
                if (jobs <= 1) {
                    scan(0, 0, total);
                } else {
                    std::vector<std::thread> workers;
                    std::uint64_t chunk = (total + jobs - 1) / jobs;
                    for (unsigned w = 0; w < jobs; ++w)
                        workers.emplace_back(scan, w, std::min<std::uint64_t>(w * chunk, total),
                                             std::min<std::uint64_t>((w + 1) * chunk, total));
                    for (auto& t : workers) t.join();
                }
                for (const auto& keys : found)
                    for (auto key : keys)
                        out << format_polynomial(decode_element(ctx, key).rep(), names) << "\n";
            }
            return 0;
        }

        if (*alt_cmd) {
            auto in = detail::parse_poly_arg(expr, field_spec, vars_csv);
            AltRepresentability r = alt_representable(in.poly);
            if (!r.representable) {
                out << "square: no\n";
                return 1;
            }
            out << "square: yes\n";
            out << "sqrt: " << format_polynomial(*r.sqrt, in.names) << "\n";

            std::optional<Matrix<Polynomial>> witness;
            if (!witness_path.empty()) {
                LoadedMatrix lm =
                    matrix_from_json(detail::read_json_file(witness_path), MatrixShape::Any);
                if (lm.field != in.field) throw std::invalid_argument("witness field mismatch");
                if (lm.vars != in.names)
                    throw std::invalid_argument("witness variable list differs from the input");
                Polynomial d = det_subset(lm.grid, lm.field, in.poly.nvars(), guards);
                if (d != *r.sqrt)
                    throw std::invalid_argument("witness determinant is not sqrt(P)");
                witness = lm.grid;
            } else if (r.sqrt->is_multilinear()) {
                if (auto m = sym_det(*r.sqrt)) witness = to_poly_matrix(*m).grid();
            }

            if (witness) {
                AlternatingMatrix m = alt_build(*witness, in.field, in.poly.nvars());
                detail::write_text(out_path,
                                   matrix_to_json(m.grid(), in.field, in.names).dump(2) + "\n",
                                   out);
                if (!out_path.empty()) out << "wrote " << out_path << " (n = " << m.n() << ")\n";
            } else {
                out << "witness: none (supply --witness with det N = sqrt(P))\n";
            }
            return 0;
        }

        if (*pf_cmd) {
            LoadedMatrix lm = matrix_from_json(detail::read_json_file(matrix_path),
                                               MatrixShape::Alternating);
            Polynomial pf =
                pfaffian(lm.grid, lm.field, static_cast<unsigned>(lm.vars.size()), guards);
            out << format_polynomial(pf, lm.vars) << "\n";
            return 0;
        }

        if (*dot_cmd) {
            LoadedMatrix lm = matrix_from_json(detail::read_json_file(matrix_path),
                                               MatrixShape::Symmetric);
            PolyMatrix pm =
                PolyMatrix::from_grid(lm.field, static_cast<unsigned>(lm.vars.size()), lm.grid);
            detail::write_text(out_path, WeightedGraph::from_matrix(pm).to_dot(lm.vars), out);
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace symdet::cli
