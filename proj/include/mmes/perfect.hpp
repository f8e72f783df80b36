// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file perfect.hpp
 * @brief Perfect maximally multipartite entangled states: population and
 *        Walsh analysis, marginal uniformity, phase-equation residuals,
 *        verdicts, equation/variable counts and a catalog of named states.
 *
 * A state is a perfect MMES when every balanced bipartition has purity 1/N_A.
 * Two necessary conditions are exposed as diagnostics: all marginals of the
 * population over at most n/2 qubits are flat, and every balanced reduced
 * density matrix is diagonal.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mmes/bipartite.hpp"
#include "mmes/bitspace.hpp"
#include "mmes/catalog_data.hpp"
#include "mmes/detail/parallel.hpp"
#include "mmes/potential.hpp"
#include "mmes/states.hpp"

namespace mmes {

inline constexpr double kDefaultPerfectTolerance = 1e-9;
inline constexpr double kProbabilityTolerance = 1e-12;

// ============================================================================
// Population and Walsh analysis
// ============================================================================

struct PopulationVector {
    int n = 0;
    std::vector<double> p;

    [[nodiscard]] index_t dim() const noexcept { return p.size(); }
};

/// c[0] is the constant term; c[T] multiplies prod_{i in T} (2 k_i - 1).
struct WalshCoefficients {
    int n = 0;
    std::vector<double> c;

    [[nodiscard]] double constant() const { return c.at(0); }
    [[nodiscard]] double operator[](index_t t) const { return c.at(t); }
};

namespace detail {

inline void check_population(const PopulationVector& pv) {
    check_qubits(pv.n, kMaxQubits);
    if (pv.p.size() != dimension(pv.n)) throw std::invalid_argument("population vector has wrong length");
    double total = 0.0;
    for (double x : pv.p) {
        if (!(x >= -kProbabilityTolerance)) throw std::invalid_argument("negative population entry");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-10) throw std::invalid_argument("population does not sum to one");
}

/// In-place unnormalized Walsh-Hadamard butterfly.
inline void fwht(std::vector<double>& v) {
    for (std::size_t h = 1; h < v.size(); h <<= 1)
        for (std::size_t i = 0; i < v.size(); i += h << 1)
            for (std::size_t j = i; j < i + h; ++j) {
                const double a = v[j];
                const double b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
}

/// Every qubit mask with 1 <= |A| <= n/2, ascending.
inline std::vector<index_t> low_order_masks(int n) {
    std::vector<index_t> out;
    for (index_t a = 1; a <= full_mask(n); ++a)
        if (2 * popcount(a) <= n) out.push_back(a);
    return out;
}

}  // namespace detail

[[nodiscard]] inline PopulationVector population(const PureState& state) {
    PopulationVector out{state.n(), std::vector<double>(state.dim())};
    for (index_t k = 0; k < state.dim(); ++k) out.p[k] = std::norm(state[k]);
    return out;
}

/// P_A(l) = sum of P(k) over k with extract(k, A) = l.
[[nodiscard]] inline PopulationVector marginal(const PopulationVector& pv, const QubitMask& a) {
    detail::check_same_n(pv.n, a.n);
    if (a.bits == 0) throw std::invalid_argument("marginal over an empty qubit set");
    PopulationVector out{a.size(), std::vector<double>(index_t{1} << a.size(), 0.0)};
    for (index_t k = 0; k < pv.dim(); ++k) out.p[extract_bits(k, a.bits)] += pv.p[k];
    return out;
}

[[nodiscard]] inline WalshCoefficients walsh_coefficients(const PopulationVector& pv) {
    detail::check_population(pv);
    std::vector<double> c = pv.p;
    detail::fwht(c);
    const double scale = std::ldexp(1.0, -pv.n);
    for (index_t t = 0; t < c.size(); ++t) c[t] *= (popcount(t) % 2 == 0 ? scale : -scale);
    return {pv.n, std::move(c)};
}

[[nodiscard]] inline PopulationVector population_from_walsh(const WalshCoefficients& w) {
    detail::check_qubits(w.n, kMaxQubits);
    if (w.c.size() != detail::dimension(w.n)) throw std::invalid_argument("Walsh vector has wrong length");
    std::vector<double> p = w.c;
    for (index_t t = 0; t < p.size(); ++t)
        if (popcount(t) % 2 == 1) p[t] = -p[t];
    detail::fwht(p);
    for (double x : p)
        if (x < -kProbabilityTolerance || x > 1.0 + kProbabilityTolerance)
            throw std::domain_error("Walsh coefficients do not describe a probability vector");
    return {w.n, std::move(p)};
}

/// max over 1 <= |A| <= n/2 and l of |P_A(l) - 2^-|A||, from the marginals.
[[nodiscard]] inline double marginal_uniformity_gap(const PopulationVector& pv) {
    detail::check_population(pv);
    double worst = 0.0;
    for (index_t a : detail::low_order_masks(pv.n)) {
        const auto m = marginal(pv, QubitMask(a, pv.n));
        const double flat = std::ldexp(1.0, -popcount(a));
        for (double x : m.p) worst = std::max(worst, std::abs(x - flat));
    }
    return worst;
}

/// Same quantity rebuilt from the Walsh coefficients:
/// P_A(l) - 2^-|A| = 2^(n-|A|) sum_{0 != T subset A} c_T prod_{i in T} (2 l_i - 1).
[[nodiscard]] inline double marginal_uniformity_gap_walsh(const WalshCoefficients& w) {
    double worst = 0.0;
    for (index_t a : detail::low_order_masks(w.n)) {
        const double factor = std::ldexp(1.0, w.n - popcount(a));
        const index_t count = index_t{1} << popcount(a);
        for (index_t l = 0; l < count; ++l) {
            const index_t bits = embed_bits(l, a);
            double dev = 0.0;
            for (index_t t = a & (~a + 1); t != 0; t = (t - a) & a) {
                const bool negative = (popcount(t) + popcount(t & bits)) % 2 == 1;
                dev += negative ? -w.c[t] : w.c[t];
            }
            worst = std::max(worst, std::abs(factor * dev));
        }
    }
    return worst;
}

/// max |c_T| over 1 <= |T| <= n/2.
[[nodiscard]] inline double low_order_walsh_max(const WalshCoefficients& w) {
    double worst = 0.0;
    for (index_t t = 1; t < w.c.size(); ++t)
        if (2 * popcount(t) <= w.n) worst = std::max(worst, std::abs(w.c[t]));
    return worst;
}

/// Largest off-diagonal magnitude of any balanced reduced density matrix.
[[nodiscard]] inline double phase_equation_residual(const PureState& state, unsigned threads = 1) {
    if (state.n() < 2) throw std::invalid_argument("phase residual requires n >= 2");
    const auto masks = balanced_masks(state.n());
    std::vector<double> worst(masks.size(), 0.0);
    detail::parallel_for(masks.size(), threads, [&](std::size_t i) {
        const auto rho = detail::reduced_matrix(state.amplitudes(), state.n(), masks[i]);
        double w = 0.0;
        for (Eigen::Index r = 0; r < rho.rows(); ++r)
            for (Eigen::Index c = 0; c < rho.cols(); ++c)
                if (r != c) w = std::max(w, std::abs(rho(r, c)));
        worst[i] = w;
    });
    return *std::max_element(worst.begin(), worst.end());
}

// ============================================================================
// Verdict
// ============================================================================

struct MmesVerdict {
    bool is_perfect = false;
    double worst_purity_gap = 0.0;
    double worst_marginal_gap = 0.0;
    double worst_phase_residual = 0.0;
    double tolerance = kDefaultPerfectTolerance;
};

/// max over balanced A of |pi_A - 1/N_A|.
[[nodiscard]] inline double worst_purity_gap(const PureState& state, unsigned threads = 1) {
    if (state.n() < 2) throw std::invalid_argument("purity gap requires n >= 2");
    const auto masks = balanced_masks(state.n());
    const double target = std::ldexp(1.0, -(state.n() / 2));
    std::vector<double> gaps(masks.size());
    detail::parallel_for(masks.size(), threads, [&](std::size_t i) {
        gaps[i] = std::abs(detail::purity_xor_sum(state.amplitudes(), state.n(), masks[i]) - target);
    });
    return *std::max_element(gaps.begin(), gaps.end());
}

/// The verdict is decided by the purity gap alone; the other two gaps are
/// necessary conditions reported for diagnosis.
[[nodiscard]] inline MmesVerdict is_perfect_mmes(const PureState& state, double tol = kDefaultPerfectTolerance,
                                                 unsigned threads = 1) {
    if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
    MmesVerdict v;
    v.tolerance = tol;
    v.worst_purity_gap = worst_purity_gap(state, threads);
    v.worst_marginal_gap = marginal_uniformity_gap(population(state));
    v.worst_phase_residual = phase_equation_residual(state, threads);
    v.is_perfect = v.worst_purity_gap <= tol;
    return v;
}

// ============================================================================
// Counting
// ============================================================================

struct EquationCounts {
    BigInt equations;  ///< m_e
    BigInt variables;  ///< m_x

    friend bool operator==(const EquationCounts&, const EquationCounts&) = default;
};

/// m_e = 2^[n/2] (2^[n/2] - 1) C(n, [n/2]);
/// m_x = 3 * 2^(n-1) - (1 + (-1)^n)/4 * C(n, [n/2]).
[[nodiscard]] inline EquationCounts equation_variable_counts(int n) {
    detail::check_qubits(n);
    if (n < 2) throw std::invalid_argument("equation counts require n >= 2");
    const auto h = static_cast<unsigned>(n / 2);
    const BigInt c = binomial_int(n, n / 2);
    const BigInt me = pow2(h) * (pow2(h) - 1) * c;
    BigInt mx = 3 * pow2(static_cast<unsigned>(n - 1));
    if (n % 2 == 0) mx -= c / 2;
    return {me, mx};
}

/// Number of Walsh coefficients left free by flat low-order marginals:
/// 2^(n-1) - (1 + (-1)^n)/4 * C(n, [n/2]).
[[nodiscard]] inline BigInt free_parameter_count(int n) {
    detail::check_qubits(n);
    BigInt r = pow2(static_cast<unsigned>(n - 1));
    if (n % 2 == 0) r -= binomial_int(n, n / 2) / 2;
    return r;
}

/// The same count by enumerating subsets T with |T| > n/2.
[[nodiscard]] inline std::uint64_t free_parameter_count_enumerated(int n) {
    detail::check_qubits(n, 30);
    std::uint64_t count = 0;
    for (index_t t = 1; t <= full_mask(n); ++t)
        if (2 * popcount(t) > n) ++count;
    return count;
}

// ============================================================================
// Catalog
// ============================================================================

struct CatalogParams {
    std::vector<Amplitude> phases;  ///< bell_family: 3, three_family: 5; empty = all ones
    int permutation = 0;            ///< three_family: power i of the cyclic shift
    int n = 3;                      ///< ghz only
};

[[nodiscard]] inline std::vector<std::string> catalog_names() {
    return {"bell_family", "ghz", "three_family", "four_best", "five_perfect", "six_perfect"};
}

namespace detail {

inline std::vector<Amplitude> catalog_phases(const CatalogParams& params, std::size_t count, const char* name) {
    if (params.phases.empty()) return std::vector<Amplitude>(count, Amplitude(1.0));
    if (params.phases.size() != count)
        throw std::invalid_argument(std::string(name) + " takes " + std::to_string(count) + " phases");
    for (const auto& z : params.phases)
        if (std::abs(std::abs(z) - 1.0) > 1e-12) throw std::invalid_argument("catalog phases must have unit modulus");
    return params.phases;
}

/// Label of p(k) for p = s^power, s(1,2,3) = (2,3,1): bit of qubit i is k_{p(i)}.
inline index_t cyclic_action(index_t k, int power) {
    std::array<int, 3> p{1, 2, 3};
    for (int r = 0; r < power; ++r)
        for (int& x : p) x = x % 3 + 1;
    index_t out = 0;
    for (int i = 1; i <= 3; ++i) {
        const index_t bit = (k >> qubit_bit(3, p[static_cast<std::size_t>(i - 1)])) & 1U;
        out |= bit << qubit_bit(3, i);
    }
    return out;
}

}  // namespace detail

/// Signs of the parameterless real catalog states; throws for other names.
[[nodiscard]] inline SignVector catalog_signs(std::string_view name) {
    if (name == "four_best") return SignVector::parse(catalog_data::kFourBest);
    if (name == "five_perfect") return SignVector::parse(catalog_data::kFivePerfect);
    if (name == "six_perfect") return SignVector::parse(catalog_data::kSixPerfect);
    throw std::invalid_argument("no sign vector for catalog entry '" + std::string(name) + "'");
}

[[nodiscard]] inline PureState catalog(std::string_view name, const CatalogParams& params = {}) {
    if (name == "bell_family") {
        const auto z = detail::catalog_phases(params, 3, "bell_family");
        const Amplitude z11 = -std::conj(z[0]) * z[1] * z[2];
        return from_amplitudes(2, {0.5 * z[0], 0.5 * z[1], 0.5 * z[2], 0.5 * z11});
    }
    if (name == "ghz") return ghz(params.n);
    if (name == "three_family") {
        if (params.permutation < 0 || params.permutation > 2)
            throw std::invalid_argument("three_family permutation must be 0, 1 or 2");
        const auto ph = detail::catalog_phases(params, 5, "three_family");
        const Amplitude a = ph[0], b = ph[1], c = ph[2], d = ph[3], e = ph[4];
        const Amplitude ab = std::conj(a) * b;
        const std::array<Amplitude, 8> coef{a, b, c, -ab * c, d, -ab * d, e, ab * e};
        std::vector<Amplitude> amps(8);
        const double s = 1.0 / std::sqrt(8.0);
        for (index_t k = 0; k < 8; ++k) amps[detail::cyclic_action(k, params.permutation)] = s * coef[k];
        return from_amplitudes(3, std::move(amps));
    }
    if (name == "four_best" || name == "five_perfect" || name == "six_perfect")
        return uniform_from_signs(catalog_signs(name));
    throw std::invalid_argument("unknown catalog entry '" + std::string(name) + "'");
}

/// Expected pi_ME of each catalog entry (ghz at its default n = 3).
[[nodiscard]] inline double catalog_expected_potential(std::string_view name) {
    static const std::map<std::string, double, std::less<>> table{
        {"bell_family", 0.5}, {"ghz", 0.5}, {"three_family", 0.5},
        {"four_best", 1.0 / 3.0}, {"five_perfect", 0.25}, {"six_perfect", 0.125}};
    const auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown catalog entry '" + std::string(name) + "'");
    return it->second;
}

/// Recomputes pi_ME of every parameterless entry and compares it with the
/// expected value; throws std::logic_error on the first mismatch.
inline void catalog_self_test(double tol = 1e-12) {
    for (const auto& name : catalog_names()) {
        const auto state = catalog(name);
        const double got = pi_me_form2(state, build_coupling_table(state.n()));
        const double want = catalog_expected_potential(name);
        if (std::abs(got - want) > tol)
            throw std::logic_error("catalog entry " + name + " has pi_ME " + std::to_string(got) + ", expected " +
                                   std::to_string(want));
    }
}

}  // namespace mmes
