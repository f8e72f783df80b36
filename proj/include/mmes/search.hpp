// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file search.hpp
 * @brief Minimization of pi_ME over uniform states: exact Gray-code sweeps of
 *        the real sign space and a Metropolis annealer over signs or phases.
 *
 * On a uniform state zeta/sqrt(N) every interference term of pi_ME belongs to
 * a "quad" {k, k^l, k^m, k^l^m} with l, m disjoint and nonzero.  Each quad is
 * hit by 8 (k, l, m) triples of the coupling table with the same weight, so
 *
 *   N^2 D pi_ME = (N_A + N_B - 1) N D + sum_quads 8 D ghat Re[z_a z_d conj(z_b z_c)]
 *
 * with D = 2 C(n, [n/2]) making every coefficient an integer.  For signs the
 * energy is therefore an exact rational with denominator N^2 D.
 */

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmes/bitspace.hpp"
#include "mmes/detail/parallel.hpp"
#include "mmes/potential.hpp"
#include "mmes/states.hpp"

namespace mmes {

// ============================================================================
// Energy model
// ============================================================================

/// Quads of a uniform-state potential with integer weights and per-index
/// incidence lists, built once from a CouplingTable.
class UniformEnergyModel {
public:
    struct Quad {
        std::uint32_t a;  ///< k
        std::uint32_t b;  ///< k ^ l
        std::uint32_t c;  ///< k ^ m
        std::uint32_t d;  ///< k ^ l ^ m
        std::int64_t weight;
    };

    static constexpr std::uint64_t kMaxQuads = std::uint64_t{1} << 26;

    explicit UniformEnergyModel(const CouplingTable& table) : n_(table.n()), dim_(table.dim()) {
        const std::uint64_t total = monomial_counts(n_).n4.convert_to<std::uint64_t>();
        if (total > kMaxQuads)
            throw std::length_error("uniform energy model for n = " + std::to_string(n_) + " needs " +
                                    std::to_string(total) + " quads");
        denominator_ = 2 * binomial_int(n_, table.n_a()).convert_to<std::int64_t>();
        const Rational d(denominator_);
        quads_.reserve(total);
        for (const auto& e : table.entries()) {
            if (e.l > e.m) continue;
            const Rational scaled = table.weight(e) * d * 8;
            const auto w = boost::multiprecision::numerator(scaled).convert_to<std::int64_t>();
            const index_t top = std::max(std::bit_floor(index_t{e.l}), std::bit_floor(index_t{e.m}));
            const index_t lo = std::min(std::bit_floor(index_t{e.l}), std::bit_floor(index_t{e.m}));
            for (index_t k = 0; k < dim_; ++k) {
                if ((k & top) != 0 || (k & lo) != 0) continue;  // k is the smallest member
                quads_.push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k ^ e.l),
                                  static_cast<std::uint32_t>(k ^ e.m), static_cast<std::uint32_t>(k ^ e.l ^ e.m), w});
            }
        }
        if (quads_.size() != total) throw std::logic_error("quad enumeration does not match monomial count");

        incidence_offsets_.assign(dim_ + 1, 0);
        for (const auto& q : quads_)
            for (auto i : {q.a, q.b, q.c, q.d}) ++incidence_offsets_[i + 1];
        for (index_t i = 0; i < dim_; ++i) incidence_offsets_[i + 1] += incidence_offsets_[i];
        incidence_.resize(incidence_offsets_.back());
        std::vector<std::size_t> fill(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
        for (std::uint32_t qi = 0; qi < quads_.size(); ++qi)
            for (auto i : {quads_[qi].a, quads_[qi].b, quads_[qi].c, quads_[qi].d}) incidence_[fill[i]++] = qi;

        const auto nd = static_cast<std::int64_t>(dim_);
        const std::int64_t da = std::int64_t{1} << table.n_a();
        const std::int64_t db = std::int64_t{1} << (n_ - table.n_a());
        offset_ = (da + db - 1) * nd * denominator_;
        scale_ = nd * nd * denominator_;
    }

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] index_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::span<const Quad> quads() const noexcept { return quads_; }
    /// Indices into quads() of every quad containing label i.
    [[nodiscard]] std::span<const std::uint32_t> incident(index_t i) const {
        return {incidence_.data() + incidence_offsets_[i], incidence_offsets_[i + 1] - incidence_offsets_[i]};
    }
    /// S with pi_ME = scaled_energy / S.
    [[nodiscard]] std::int64_t scale() const noexcept { return scale_; }
    /// Phase-independent part of the scaled energy.
    [[nodiscard]] std::int64_t offset() const noexcept { return offset_; }

    [[nodiscard]] std::int64_t scaled_energy(std::span<const std::int8_t> s) const {
        check(s.size());
        std::int64_t acc = offset_;
        for (const auto& q : quads_) acc += q.weight * (s[q.a] * s[q.b] * s[q.c] * s[q.d]);
        return acc;
    }

    /// Scaled energy change when sign i is flipped.
    [[nodiscard]] std::int64_t scaled_flip_delta(std::span<const std::int8_t> s, index_t i) const {
        check(s.size());
        if (i >= dim_) throw std::out_of_range("flip index out of range");
        std::int64_t acc = 0;
        for (auto qi : incident(i)) {
            const auto& q = quads_[qi];
            acc += q.weight * (s[q.a] * s[q.b] * s[q.c] * s[q.d]);
        }
        return -2 * acc;
    }

    [[nodiscard]] double phase_energy(std::span<const Amplitude> z) const {
        check(z.size());
        detail::CompensatedSum acc;
        for (const auto& q : quads_) acc += static_cast<double>(q.weight) * term(z, q);
        return (static_cast<double>(offset_) + acc.value()) / static_cast<double>(scale_);
    }

    /// Energy change (in pi_ME units) when z_i is replaced by `next`.
    [[nodiscard]] double phase_delta(std::span<const Amplitude> z, index_t i, Amplitude next) const {
        double acc = 0.0;
        for (auto qi : incident(i)) {
            const auto& q = quads_[qi];
            auto at = [&](std::uint32_t j) { return j == i ? next : z[j]; };
            const double after = (at(q.a) * at(q.d) * std::conj(at(q.b) * at(q.c))).real();
            acc += static_cast<double>(q.weight) * (after - term(z, q));
        }
        return acc / static_cast<double>(scale_);
    }

private:
    static double term(std::span<const Amplitude> z, const Quad& q) {
        return (z[q.a] * z[q.d] * std::conj(z[q.b] * z[q.c])).real();
    }
    void check(std::size_t size) const {
        if (size != dim_) throw std::invalid_argument("vector length does not match energy model");
    }

    int n_;
    index_t dim_;
    std::int64_t denominator_ = 1;
    std::int64_t offset_ = 0;
    std::int64_t scale_ = 1;
    std::vector<Quad> quads_;
    std::vector<std::size_t> incidence_offsets_;
    std::vector<std::uint32_t> incidence_;
};

/// Exact pi_ME of a real uniform state, accumulated table entry by table entry
/// with integer weights and scaled once.
[[nodiscard]] inline Rational energy_uniform_exact(const SignVector& signs, const CouplingTable& table) {
    detail::check_table(table, signs.n);
    const index_t dim = table.dim();
    const BigInt two_c = 2 * binomial_int(table.n(), table.n_a());
    BigInt acc = 0;
    for (const auto& e : table.entries()) {
        std::int64_t part = 0;
        for (index_t k = 0; k < dim; ++k)
            part += signs.signs[k] * signs.signs[k ^ e.l ^ e.m] * signs.signs[k ^ e.l] * signs.signs[k ^ e.m];
        acc += numerator(table.weight(e) * Rational(two_c)) * part;
    }
    const BigInt nn = BigInt(dim) * BigInt(dim);
    return table.constant() + Rational(acc, nn * two_c);
}

[[nodiscard]] inline double energy_uniform(const SignVector& signs, const CouplingTable& table) {
    return to_double(energy_uniform_exact(signs, table));
}

[[nodiscard]] inline Rational energy_uniform_exact(const SignVector& signs, const UniformEnergyModel& model) {
    return Rational(model.scaled_energy(signs.signs), model.scale());
}

/// energy(flipped) - energy(current) for a single sign flip.
[[nodiscard]] inline double flip_delta(const SignVector& signs, index_t flip_index, const UniformEnergyModel& model) {
    return static_cast<double>(model.scaled_flip_delta(signs.signs, flip_index)) /
           static_cast<double>(model.scale());
}

// ============================================================================
// Reports
// ============================================================================

enum class SearchMode { exhaustive, anneal };
enum class Objective { minimize, maximize };
enum class SymmetryMode { full, fix_global_sign };
enum class MoveKind { sign_flip, phase_rotation };

struct SearchReport {
    int n = 0;
    SearchMode mode = SearchMode::exhaustive;
    Objective objective = Objective::minimize;
    SymmetryMode symmetry = SymmetryMode::full;
    double best_value = 0.0;
    std::optional<Rational> best_exact;        ///< sign searches only
    std::optional<std::uint64_t> minimizer_count;  ///< exhaustive only
    std::vector<SignVector> sample_minimizers;  ///< exhaustive: first minimizers; anneal: best sign state
    std::vector<Amplitude> best_phases;         ///< phase annealing only
    std::vector<double> replica_best;           ///< anneal only, per replica
    std::uint64_t evaluations = 0;
    double wall_seconds = 0.0;
};

// ============================================================================
// Exhaustive search
// ============================================================================

struct ExhaustiveOptions {
    SymmetryMode symmetry = SymmetryMode::full;
    unsigned threads = 1;
    bool allow_long_run = false;   ///< required for n = 5
    std::size_t max_samples = 16;  ///< minimizers kept, in Gray-code order
};

namespace detail {

struct WordTerm {
    std::uint64_t mask;
    std::int64_t weight;
};

struct BlockResult {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::uint64_t count = 0;
    std::vector<std::uint64_t> samples;
};

inline std::int64_t word_energy(std::uint64_t word, const std::vector<WordTerm>& terms, std::int64_t offset) {
    std::int64_t acc = offset;
    for (const auto& t : terms) acc += (std::popcount(word & t.mask) & 1) ? -t.weight : t.weight;
    return acc;
}

}  // namespace detail

/// Exact minimum of pi_ME over all real uniform states {+-1}^(2^n), with the
/// number of minimizers.  In full mode the count includes both members of
/// every +-zeta pair; fix_global_sign pins zeta_0 = +1 and counts half.
[[nodiscard]] inline SearchReport exhaustive_search(int n, const ExhaustiveOptions& options = {}) {
    if (n < 2 || n > 5) throw std::out_of_range("exhaustive search supports 2 <= n <= 5");
    if (n == 5 && !options.allow_long_run)
        throw std::invalid_argument("exhaustive search at n = 5 enumerates 2^32 states; pass allow_long_run");
    const auto start = std::chrono::steady_clock::now();
    const auto table = build_coupling_table(n);
    const UniformEnergyModel model(table);
    const index_t dim = model.dim();

    std::vector<std::vector<detail::WordTerm>> per_index(dim);
    std::vector<detail::WordTerm> all_terms;
    for (const auto& q : model.quads()) {
        const std::uint64_t mask = (std::uint64_t{1} << q.a) | (std::uint64_t{1} << q.b) |
                                   (std::uint64_t{1} << q.c) | (std::uint64_t{1} << q.d);
        all_terms.push_back({mask, q.weight});
        for (auto i : {q.a, q.b, q.c, q.d}) per_index[i].push_back({mask, q.weight});
    }

    const bool fix = options.symmetry == SymmetryMode::fix_global_sign;
    const int free_bits = static_cast<int>(dim) - (fix ? 1 : 0);
    const int shift = fix ? 1 : 0;
    const std::uint64_t total = std::uint64_t{1} << free_bits;
    const std::size_t blocks = static_cast<std::size_t>(std::min<std::uint64_t>(64, total));

    std::vector<detail::BlockResult> results(blocks);
    detail::parallel_for(blocks, options.threads, [&](std::size_t b) {
        const std::uint64_t begin = total / blocks * b;
        const std::uint64_t end = b + 1 == blocks ? total : total / blocks * (b + 1);
        auto& r = results[b];
        std::uint64_t word = (begin ^ (begin >> 1)) << shift;
        std::int64_t energy = detail::word_energy(word, all_terms, model.offset());
        auto visit = [&](std::uint64_t w, std::int64_t e) {
            if (e < r.best) {
                r.best = e;
                r.count = 0;
                r.samples.clear();
            }
            if (e == r.best) {
                ++r.count;
                if (r.samples.size() < options.max_samples) r.samples.push_back(w);
            }
        };
        visit(word, energy);
        for (std::uint64_t i = begin + 1; i < end; ++i) {
            const int bit = std::countr_zero(i) + shift;
            std::int64_t acc = 0;
            for (const auto& t : per_index[static_cast<std::size_t>(bit)])
                acc += (std::popcount(word & t.mask) & 1) ? -t.weight : t.weight;
            energy -= 2 * acc;
            word ^= std::uint64_t{1} << bit;
            visit(word, energy);
        }
    });

    detail::BlockResult merged;
    for (const auto& r : results) {
        if (r.best < merged.best) {
            merged.best = r.best;
            merged.count = 0;
            merged.samples.clear();
        }
        if (r.best == merged.best) {
            merged.count += r.count;
            for (auto w : r.samples)
                if (merged.samples.size() < options.max_samples) merged.samples.push_back(w);
        }
    }

    SearchReport report;
    report.n = n;
    report.mode = SearchMode::exhaustive;
    report.symmetry = options.symmetry;
    report.best_exact = Rational(merged.best, model.scale());
    report.best_value = to_double(*report.best_exact);
    report.minimizer_count = merged.count;
    for (auto w : merged.samples) report.sample_minimizers.push_back(SignVector::from_word(n, w));
    report.evaluations = total;
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// ============================================================================
// Annealing
// ============================================================================

struct BetaStep {
    double beta = 0.0;
    std::uint64_t sweeps = 0;
};

struct AnnealConfig {
    std::vector<BetaStep> schedule;
    MoveKind move = MoveKind::sign_flip;
    double max_angle = std::numbers::pi / 2;
    unsigned replicas = 1;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    void validate() const {
        if (replicas < 1) throw std::invalid_argument("replicas must be at least 1");
        if (!(max_angle > 0.0) || !std::isfinite(max_angle)) throw std::invalid_argument("max_angle must be positive");
        for (const auto& s : schedule)
            if (!std::isfinite(s.beta)) throw std::invalid_argument("beta must be finite");
    }
    /// Negative final beta selects maximization.
    [[nodiscard]] Objective objective() const {
        return !schedule.empty() && schedule.back().beta < 0.0 ? Objective::maximize : Objective::minimize;
    }
};

/// Parses "beta:sweeps,beta:sweeps,...".
[[nodiscard]] inline std::vector<BetaStep> parse_schedule(std::string_view text) {
    std::vector<BetaStep> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = text.substr(0, comma);
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) throw std::invalid_argument("schedule item '" + std::string(item) + "' lacks ':'");
        BetaStep step;
        std::size_t used = 0;
        const std::string beta(item.substr(0, colon));
        const std::string sweeps(item.substr(colon + 1));
        try {
            step.beta = std::stod(beta, &used);
            if (used != beta.size()) throw std::invalid_argument("");
            if (sweeps.empty() || sweeps.front() == '-') throw std::invalid_argument("");
            step.sweeps = std::stoull(sweeps, &used);
            if (used != sweeps.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed schedule item '" + std::string(item) + "'");
        }
        out.push_back(step);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
        if (text.empty()) throw std::invalid_argument("schedule ends with ','");
    }
    return out;
}

namespace detail {

[[nodiscard]] inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct ReplicaResult {
    double best = 0.0;
    std::int64_t best_scaled = 0;
    std::vector<std::int8_t> best_signs;
    std::vector<Amplitude> best_phases;
    std::uint64_t evaluations = 0;
};

inline bool improves(Objective obj, double candidate, double incumbent) {
    return obj == Objective::minimize ? candidate < incumbent : candidate > incumbent;
}

inline ReplicaResult run_sign_replica(const UniformEnergyModel& model, const AnnealConfig& cfg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const index_t dim = model.dim();
    std::vector<std::int8_t> s(dim);
    for (auto& x : s) x = (rng() & 1U) ? -1 : 1;
    const auto obj = cfg.objective();
    const double scale = static_cast<double>(model.scale());
    std::int64_t energy = model.scaled_energy(s);
    ReplicaResult r{static_cast<double>(energy) / scale, energy, s, {}, 1};
    std::uniform_int_distribution<index_t> site(0, dim - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& step : cfg.schedule)
        for (std::uint64_t sweep = 0; sweep < step.sweeps; ++sweep)
            for (index_t t = 0; t < dim; ++t) {
                const index_t i = site(rng);
                const std::int64_t d = model.scaled_flip_delta(s, i);
                const double de = static_cast<double>(d) / scale;
                ++r.evaluations;
                if (de > 0.0 || (de < 0.0 && step.beta < 0.0)) {
                    if (unit(rng) >= std::exp(-step.beta * de)) continue;
                }
                s[i] = static_cast<std::int8_t>(-s[i]);
                energy += d;
                const double e = static_cast<double>(energy) / scale;
                if (improves(obj, e, r.best)) {
                    r.best = e;
                    r.best_scaled = energy;
                    r.best_signs = s;
                }
            }
    return r;
}

inline ReplicaResult run_phase_replica(const UniformEnergyModel& model, const AnnealConfig& cfg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const index_t dim = model.dim();
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<Amplitude> z(dim);
    for (auto& x : z) x = std::polar(1.0, angle(rng));
    const auto obj = cfg.objective();
    double energy = model.phase_energy(z);
    ReplicaResult r{energy, 0, {}, z, 1};
    std::uniform_int_distribution<index_t> site(0, dim - 1);
    std::uniform_real_distribution<double> rot(-cfg.max_angle, cfg.max_angle);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& step : cfg.schedule)
        for (std::uint64_t sweep = 0; sweep < step.sweeps; ++sweep) {
            for (index_t t = 0; t < dim; ++t) {
                const index_t i = site(rng);
                const Amplitude next = z[i] * std::polar(1.0, rot(rng));
                const double de = model.phase_delta(z, i, next);
                ++r.evaluations;
                if ((de > 0.0 || (de < 0.0 && step.beta < 0.0)) && unit(rng) >= std::exp(-step.beta * de)) continue;
                z[i] = next / std::abs(next);
                energy += de;
                if (improves(obj, energy, r.best)) {
                    r.best = energy;
                    r.best_phases = z;
                }
            }
            energy = model.phase_energy(z);  // shed accumulated rounding once per sweep
        }
    return r;
}

}  // namespace detail

/// Metropolis sampling of exp(-beta pi_ME) over real or complex uniform
/// states; reports the best state seen.  Replicas are independent and their
/// seeds follow from cfg.seed, so results do not depend on cfg.threads.
[[nodiscard]] inline SearchReport anneal(int n, const AnnealConfig& cfg, const CouplingTable& table) {
    cfg.validate();
    if (table.n() != n) throw std::invalid_argument("coupling table does not match n");
    const auto start = std::chrono::steady_clock::now();
    const UniformEnergyModel model(table);

    std::vector<std::uint64_t> seeds(cfg.replicas);
    std::uint64_t state = cfg.seed;
    for (auto& s : seeds) s = detail::splitmix64(state);

    std::vector<detail::ReplicaResult> results(cfg.replicas);
    detail::parallel_for(cfg.replicas, cfg.threads, [&](std::size_t r) {
        results[r] = cfg.move == MoveKind::sign_flip ? detail::run_sign_replica(model, cfg, seeds[r])
                                                     : detail::run_phase_replica(model, cfg, seeds[r]);
    });

    SearchReport report;
    report.n = n;
    report.mode = SearchMode::anneal;
    report.objective = cfg.objective();
    std::size_t winner = 0;
    for (std::size_t r = 0; r < results.size(); ++r) {
        report.evaluations += results[r].evaluations;
        if (detail::improves(report.objective, results[r].best, results[winner].best)) winner = r;
    }

    // Re-verify every replica's best state by a full evaluation.
    for (auto& res : results) {
        double check = 0.0;
        if (cfg.move == MoveKind::sign_flip) {
            const SignVector sv{n, res.best_signs};
            const Rational exact = energy_uniform_exact(sv, table);
            if (exact != Rational(res.best_scaled, model.scale()))
                throw std::logic_error("annealer energy bookkeeping diverged from full evaluation");
            check = to_double(exact);
        } else {
            check = pi_me_uniform(res.best_phases, table);
            if (std::abs(check - res.best) > 1e-9)
                throw std::logic_error("annealer energy bookkeeping diverged from full evaluation");
        }
        res.best = check;
        report.replica_best.push_back(check);
    }

    const auto& best = results[winner];
    report.best_value = best.best;
    if (cfg.move == MoveKind::sign_flip) {
        report.best_exact = Rational(best.best_scaled, model.scale());
        report.sample_minimizers.push_back(SignVector{n, best.best_signs});
    } else {
        report.best_phases = best.best_phases;
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace mmes
