// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end.  run() is kept in a header so tests can drive it
// with in-memory streams.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error.

#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmes.hpp"
#include "state_io.hpp"

namespace mmes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct Globals {
    unsigned threads = 1;
    double tol = kDefaultPerfectTolerance;
    bool pretty = false;
    bool timing = false;
};

inline void emit(std::ostream& out, const io::json& j) { out << j.dump() << '\n'; }

inline std::vector<int> parse_qubit_list(const std::string& text, int n) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int q = 0;
        try {
            q = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw UsageError("bad qubit label '" + item + "'");
        }
        if (used != item.size() || q < 1 || q > n) throw UsageError("qubit label '" + item + "' outside [1, n]");
        if (std::find(out.begin(), out.end(), q) != out.end()) throw UsageError("repeated qubit label " + item);
        out.push_back(q);
    }
    if (out.empty() || static_cast<int>(out.size()) >= n) throw UsageError("subsystem must be a nonempty proper subset");
    return out;
}

inline std::vector<Amplitude> parse_angles(const std::vector<double>& angles) {
    std::vector<Amplitude> out;
    for (double a : angles) out.push_back(std::polar(1.0, a));
    return out;
}

inline void warn_all(std::ostream& err, const io::LoadedState& s) {
    for (const auto& w : s.warnings) err << "warning: " << w << '\n';
}

}  // namespace detail

/// Runs one command.  `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multipartite entanglement of n-qubit pure states", "mmes"};
    app.require_subcommand(1, 1);
    detail::Globals g;
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1U, 256U));
    app.add_option("--tol", g.tol, "Tolerance for perfect-MMES verdicts")->check(CLI::NonNegativeNumber);
    app.add_flag("--pretty", g.pretty, "Human-readable output");
    app.add_flag("--timing", g.timing, "Include wall time in reports");

    // counts
    auto* counts = app.add_subcommand("counts", "Monomial or equation/variable counts as TSV");
    std::string table_kind = "monomials";
    int n_min = 2, n_max = 8;
    counts->add_option("--table", table_kind, "monomials | equations")
        ->check(CLI::IsMember({"monomials", "equations"}));
    counts->add_option("--n-min", n_min, "Smallest n")->check(CLI::Range(2, kMaxCountingQubits));
    counts->add_option("--n-max", n_max, "Largest n")->check(CLI::Range(2, kMaxCountingQubits));

    // purity
    auto* purity_cmd = app.add_subcommand("purity", "Purity and bipartite measures of one bipartition");
    std::string purity_file, subsystem;
    purity_cmd->add_option("--file", purity_file, "State file")->required();
    purity_cmd->add_option("--subsystem", subsystem, "Comma-separated qubit labels of A (1-based)")->required();

    // potential
    auto* potential_cmd = app.add_subcommand("potential", "Potential of multipartite entanglement");
    std::string potential_file;
    int form = 2;
    potential_cmd->add_option("--file", potential_file, "State file")->required();
    potential_cmd->add_option("--form", form, "Evaluator: 1, 2 or 4")->check(CLI::IsMember({1, 2, 4}));

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Perfect-MMES verdict for a state file");
    std::string verify_file;
    verify_cmd->add_option("file", verify_file, "State file")->required();

    // catalog
    auto* catalog_cmd = app.add_subcommand("catalog", "Write a named catalog state");
    std::string catalog_name, catalog_out;
    std::vector<double> angles;
    int perm = 0, ghz_n = 3;
    catalog_cmd->add_option("name", catalog_name, "Catalog entry")->required()->check(CLI::IsMember(catalog_names()));
    catalog_cmd->add_option("--out", catalog_out, "Output file (default: stdout)");
    catalog_cmd->add_option("--phases", angles, "Free phases as angles in radians")->delimiter(',');
    catalog_cmd->add_option("--permutation", perm, "three_family: cyclic shift power")->check(CLI::Range(0, 2));
    catalog_cmd->add_option("--n", ghz_n, "ghz: number of qubits")->check(CLI::Range(2, kMaxQubits));

    // search
    auto* search_cmd = app.add_subcommand("search", "Exhaustive search over real uniform states");
    int search_n = 0;
    std::string mode = "exhaustive", symmetry = "full";
    bool long_run = false;
    std::size_t samples = 16;
    search_cmd->add_option("--n", search_n, "Number of qubits")->required()->check(CLI::Range(2, 5));
    search_cmd->add_option("--mode", mode, "Search mode")->check(CLI::IsMember({"exhaustive"}));
    search_cmd->add_option("--symmetry", symmetry, "full | fix_global_sign")
        ->check(CLI::IsMember({"full", "fix_global_sign"}));
    search_cmd->add_flag("--allow-long-run", long_run, "Permit n = 5");
    search_cmd->add_option("--samples", samples, "Minimizers to report");

    // anneal
    auto* anneal_cmd = app.add_subcommand("anneal", "Metropolis annealing over uniform states");
    int anneal_n = 0;
    std::string schedule_text = "1:100,10:100,100:200", move = "sign";
    unsigned replicas = 1;
    std::uint64_t seed = 0;
    double max_angle = std::numbers::pi / 2;
    anneal_cmd->add_option("--n", anneal_n, "Number of qubits")->required()->check(CLI::Range(2, 12));
    anneal_cmd->add_option("--schedule", schedule_text, "beta:sweeps,beta:sweeps,...");
    anneal_cmd->add_option("--replicas", replicas, "Independent replicas")->check(CLI::Range(1U, 100000U));
    anneal_cmd->add_option("--seed", seed, "Master seed");
    anneal_cmd->add_option("--move", move, "sign | phase")->check(CLI::IsMember({"sign", "phase"}));
    anneal_cmd->add_option("--max-angle", max_angle, "Largest phase rotation")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (counts->parsed()) {
            if (n_min > n_max) throw UsageError("--n-min exceeds --n-max");
            if (table_kind == "monomials") {
                out << "n\tN1\tN2\tN4\n";
                for (int n = n_min; n <= n_max; ++n) {
                    const auto c = monomial_counts(n);
                    out << n << '\t' << c.n1 << '\t' << c.n2 << '\t' << c.n4 << '\n';
                }
            } else {
                out << "n\tme\tmx\n";
                for (int n = n_min; n <= n_max; ++n) {
                    const auto c = equation_variable_counts(n);
                    out << n << '\t' << c.equations << '\t' << c.variables << '\n';
                }
            }
            return kExitOk;
        }

        if (purity_cmd->parsed()) {
            const auto loaded = io::read_state(purity_file);
            detail::warn_all(err, loaded);
            const auto& s = loaded.state;
            const auto a = QubitMask::from_qubits(s.n(), detail::parse_qubit_list(subsystem, s.n()));
            const double p = purity(s, a);
            const double p1 = purity_form1(s, a);
            const double lin = linear_entropy_L(s, a);
            const double ent = entanglement_E(s, a);
            if (g.pretty) {
                out << std::setprecision(15) << "purity " << p << "\nlinear entropy " << lin << "\nentanglement "
                    << ent << '\n';
            } else {
                detail::emit(out, {{"n", s.n()}, {"subsystem", a.qubits()}, {"purity", p}, {"purity_matrix", p1},
                                   {"linear_entropy", lin}, {"entanglement", ent}});
            }
            return kExitOk;
        }

        if (potential_cmd->parsed()) {
            const auto loaded = io::read_state(potential_file);
            detail::warn_all(err, loaded);
            const auto& s = loaded.state;
            if (s.n() < 2) throw io::ValidationError("pi_ME needs n >= 2");
            double value = 0.0;
            std::optional<CouplingTable> table;
            if (form == 1) {
                value = pi_me_form1(s, g.threads);
            } else {
                table.emplace(s.n());
                value = form == 2 ? pi_me_form2(s, *table, g.threads) : pi_me_form4(s, *table, g.threads);
            }
            const double na = std::ldexp(1.0, s.n() / 2);
            const double lme = na / (na - 1.0) * (1.0 - value);
            if (g.pretty) {
                out << std::setprecision(15) << "pi_ME " << value << "\naverage linear entropy " << lme << '\n';
            } else {
                detail::emit(out, {{"n", s.n()}, {"form", form}, {"pi_me", value}, {"avg_linear_entropy", lme}});
            }
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            const auto loaded = io::read_state(verify_file);
            detail::warn_all(err, loaded);
            if (loaded.state.n() < 2) throw io::ValidationError("verify needs n >= 2");
            const auto v = is_perfect_mmes(loaded.state, g.tol, g.threads);
            if (g.pretty) {
                out << std::setprecision(6) << (v.is_perfect ? "perfect MMES" : "not a perfect MMES")
                    << "\n  purity gap " << v.worst_purity_gap << "\n  marginal gap " << v.worst_marginal_gap
                    << "\n  phase residual " << v.worst_phase_residual << '\n';
            } else {
                auto j = io::verdict_to_json(v);
                j["n"] = loaded.state.n();
                detail::emit(out, j);
            }
            return kExitOk;
        }

        if (catalog_cmd->parsed()) {
            catalog_self_test();
            io::json j;
            if (catalog_name == "four_best" || catalog_name == "five_perfect" || catalog_name == "six_perfect") {
                if (!angles.empty()) throw UsageError(catalog_name + " takes no phases");
                j = io::state_to_json(catalog_signs(catalog_name));
            } else {
                CatalogParams params;
                try {
                    params.phases = detail::parse_angles(angles);
                    params.permutation = perm;
                    params.n = ghz_n;
                    j = io::state_to_json(catalog(catalog_name, params));
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
            }
            if (catalog_out.empty())
                detail::emit(out, j);
            else
                io::write_json(catalog_out, j);
            return kExitOk;
        }

        if (search_cmd->parsed()) {
            ExhaustiveOptions opt;
            opt.symmetry = symmetry == "full" ? SymmetryMode::full : SymmetryMode::fix_global_sign;
            opt.threads = g.threads;
            opt.allow_long_run = long_run;
            opt.max_samples = samples;
            if (search_n == 5 && !long_run) throw UsageError("n = 5 enumerates 2^32 states; add --allow-long-run");
            const auto r = exhaustive_search(search_n, opt);
            if (g.pretty) {
                out << "minimum " << to_string(*r.best_exact) << " (" << std::setprecision(15) << r.best_value
                    << "), minimizers " << *r.minimizer_count << '\n';
            } else {
                detail::emit(out, io::report_to_json(r, g.timing));
            }
            return kExitOk;
        }

        if (anneal_cmd->parsed()) {
            AnnealConfig cfg;
            try {
                cfg.schedule = parse_schedule(schedule_text);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            cfg.move = move == "sign" ? MoveKind::sign_flip : MoveKind::phase_rotation;
            cfg.max_angle = max_angle;
            cfg.replicas = replicas;
            cfg.seed = seed;
            cfg.threads = g.threads;
            const auto table = build_coupling_table(anneal_n);
            const auto r = anneal(anneal_n, cfg, table);
            if (g.pretty) {
                out << (r.objective == Objective::minimize ? "minimum " : "maximum ") << std::setprecision(15)
                    << r.best_value << " over " << replicas << " replicas\n";
            } else {
                detail::emit(out, io::report_to_json(r, g.timing));
            }
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace mmes::cli
