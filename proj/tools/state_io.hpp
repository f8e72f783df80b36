// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

// JSON state files:
//   {"n": 3, "format": "complex", "data": [[re, im], ...]}
//   {"n": 4, "format": "signs",   "data": "+-+-..."}
// Sign files never pass through floating point.

#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmes.hpp"

namespace mmes::io {

using nlohmann::json;

/// Input that is well-formed enough to parse but fails validation.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Squared-norm deviations up to this are renormalized with a warning.
inline constexpr double kRenormalizeTolerance = 1e-6;

struct LoadedState {
    PureState state;
    std::optional<SignVector> signs;  ///< set for sign-format files
    std::vector<std::string> warnings;
};

[[nodiscard]] inline json state_to_json(const PureState& s) {
    json data = json::array();
    for (const auto& a : s.amplitudes()) data.push_back({a.real(), a.imag()});
    return {{"n", s.n()}, {"format", "complex"}, {"data", std::move(data)}};
}

[[nodiscard]] inline json state_to_json(const SignVector& s) {
    return {{"n", s.n}, {"format", "signs"}, {"data", s.str()}};
}

[[nodiscard]] inline LoadedState state_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("state file must hold a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer()) throw ValidationError("state file lacks integer field 'n'");
    const int n = j["n"].get<int>();
    if (n < 1 || n > kMaxQubits) throw ValidationError("state file has n = " + std::to_string(n) + " out of range");
    const index_t dim = index_t{1} << n;
    const std::string format = j.value("format", "complex");
    if (!j.contains("data")) throw ValidationError("state file lacks field 'data'");
    const auto& data = j["data"];

    if (format == "signs") {
        if (!data.is_string()) throw ValidationError("sign data must be a string of '+' and '-'");
        const auto text = data.get<std::string>();
        if (text.size() != dim)
            throw ValidationError("sign string has length " + std::to_string(text.size()) + ", expected " +
                                  std::to_string(dim));
        try {
            auto sv = SignVector::parse(text);
            return {uniform_from_signs(sv), sv, {}};
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
    }
    if (format != "complex") throw ValidationError("unknown state format '" + format + "'");
    if (!data.is_array()) throw ValidationError("complex data must be an array of [re, im] pairs");
    if (data.size() != dim)
        throw ValidationError("amplitude vector has length " + std::to_string(data.size()) + ", expected " +
                              std::to_string(dim));
    std::vector<Amplitude> amps;
    amps.reserve(dim);
    for (const auto& e : data) {
        if (e.is_number()) {
            amps.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            amps.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw ValidationError("amplitude entries must be [re, im] pairs");
        }
        if (!std::isfinite(amps.back().real()) || !std::isfinite(amps.back().imag()))
            throw ValidationError("amplitudes must be finite");
    }
    double norm2 = 0.0;
    for (const auto& a : amps) norm2 += std::norm(a);
    const double dev = std::abs(norm2 - 1.0);
    if (dev <= kNormTolerance) return {PureState::from_normalized(n, std::move(amps)), std::nullopt, {}};
    if (dev <= kRenormalizeTolerance) {
        std::ostringstream msg;
        msg << "state renormalized (squared norm deviated by " << dev << ")";
        return {from_amplitudes(n, std::move(amps)), std::nullopt, {msg.str()}};
    }
    std::ostringstream msg;
    msg << "state is not normalized (squared norm " << norm2 << ")";
    throw ValidationError(msg.str());
}

[[nodiscard]] inline LoadedState read_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open state file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("malformed JSON in '" + path + "': " + e.what());
    }
    return state_from_json(j);
}

inline void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << j.dump() << '\n';
    if (!out) throw ValidationError("write to '" + path + "' failed");
}

inline void write_state(const std::string& path, const PureState& s) { write_json(path, state_to_json(s)); }
inline void write_state(const std::string& path, const SignVector& s) { write_json(path, state_to_json(s)); }

// ----------------------------------------------------------------------------
// Reports
// ----------------------------------------------------------------------------

[[nodiscard]] inline json verdict_to_json(const MmesVerdict& v) {
    return {{"is_perfect", v.is_perfect},
            {"worst_purity_gap", v.worst_purity_gap},
            {"worst_marginal_gap", v.worst_marginal_gap},
            {"worst_phase_residual", v.worst_phase_residual},
            {"tolerance", v.tolerance}};
}

[[nodiscard]] inline json report_to_json(const SearchReport& r, bool with_time = false) {
    const bool minimize = r.objective == Objective::minimize;
    const char* key = minimize ? "min_value" : "max_value";
    json j;
    j["n"] = r.n;
    j["mode"] = r.mode == SearchMode::exhaustive ? "exhaustive" : "anneal";
    j["objective"] = minimize ? "minimize" : "maximize";
    j[key] = r.best_value;
    if (r.best_exact) j[std::string(key) + "_exact"] = to_string(*r.best_exact);
    if (r.mode == SearchMode::exhaustive) {
        j["symmetry"] = r.symmetry == SymmetryMode::full ? "full" : "fix_global_sign";
        j["minimizer_count"] = r.minimizer_count.value_or(0);
    }
    json samples = json::array();
    for (const auto& s : r.sample_minimizers) samples.push_back(s.str());
    j[r.mode == SearchMode::exhaustive ? "sample_minimizers" : "best_signs"] = std::move(samples);
    if (!r.best_phases.empty()) {
        json ph = json::array();
        for (const auto& z : r.best_phases) ph.push_back({z.real(), z.imag()});
        j["best_phases"] = std::move(ph);
    }
    if (!r.replica_best.empty()) j["replica_best"] = r.replica_best;
    j["evaluations"] = r.evaluations;
    if (with_time) j["wall_time_seconds"] = r.wall_seconds;
    return j;
}

}  // namespace mmes::io
