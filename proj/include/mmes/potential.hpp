// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file potential.hpp
 * @brief The potential of multipartite entanglement pi_ME (average purity over
 *        balanced bipartitions) and the coupling-function machinery behind it.
 *
 * pi_ME(z) = sum_{k,l,m} g(l, m; [n/2]) Re[z_k z_{k^l^m} conj(z_{k^l}) conj(z_{k^m})]
 *
 * with g(a, b; n_A) = [a & b == 0] * ghat(|a|, |b|; n_A).  All weights are exact
 * rationals; they are converted to double once, when a CouplingTable is built.
 *
 * Monomial counts grow like 2^(n-3) 3^n (asymptotic only, not computed here).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmes/bipartite.hpp"
#include "mmes/bitspace.hpp"
#include "mmes/detail/parallel.hpp"
#include "mmes/detail/summation.hpp"
#include "mmes/states.hpp"

namespace mmes {

// ============================================================================
// Coupling function
// ============================================================================

namespace detail {
inline void check_subsystem_size(int n, int n_a) {
    check_qubits(n);
    if (n_a < 1 || n_a > n - 1)
        throw std::out_of_range("n_A = " + std::to_string(n_a) + " outside [1, " + std::to_string(n - 1) + "]");
}
}  // namespace detail

/// ghat(s, t; n_A) = 1/2 C(n, n_A)^-1 [C(n-s-t, n_A-s) + C(n-s-t, n_A-t)].
[[nodiscard]] inline Rational g_hat(int s, int t, int n, int n_a) {
    detail::check_subsystem_size(n, n_a);
    if (s < 0 || t < 0) throw std::invalid_argument("g_hat weights must be nonnegative");
    const BigInt num = binomial_int(n - s - t, n_a - s) + binomial_int(n - s - t, n_a - t);
    return Rational(num, 2 * binomial_int(n, n_a));
}

/// Same value through multinomials:
/// 1/2 (n; s, t)^-1 [C(n_A, s) C(n_B, t) + C(n_A, t) C(n_B, s)].
[[nodiscard]] inline Rational g_hat_multinomial(int s, int t, int n, int n_a) {
    detail::check_subsystem_size(n, n_a);
    if (s < 0 || t < 0) throw std::invalid_argument("g_hat weights must be nonnegative");
    const BigInt multi = multinomial(n, s, t);
    if (multi == 0) return 0;
    const int n_b = n - n_a;
    const BigInt num = binomial_int(n_a, s) * binomial_int(n_b, t) + binomial_int(n_a, t) * binomial_int(n_b, s);
    return Rational(num, 2 * multi);
}

/// Exact ghat(s, t; n_A) for all 0 <= s, t <= n.
class GHatGrid {
public:
    GHatGrid(int n, int n_a) : n_(n), n_a_(n_a), values_(static_cast<std::size_t>((n + 1) * (n + 1))) {
        detail::check_subsystem_size(n, n_a);
        for (int s = 0; s <= n; ++s)
            for (int t = 0; t <= n; ++t) values_[idx(s, t)] = g_hat(s, t, n, n_a);
    }
    [[nodiscard]] const Rational& operator()(int s, int t) const { return values_[idx(s, t)]; }
    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int n_a() const noexcept { return n_a_; }

private:
    [[nodiscard]] std::size_t idx(int s, int t) const { return static_cast<std::size_t>(s * (n_ + 1) + t); }
    int n_;
    int n_a_;
    std::vector<Rational> values_;
};

/// g(a, b; n_A) = [a & b == 0] ghat(|a|, |b|; n_A).
[[nodiscard]] inline Rational g(const BasisIndex& a, const BasisIndex& b, int n_a) {
    detail::check_same_n(a.n, b.n);
    if ((a.value & b.value) != 0) return 0;
    return g_hat(weight(a), weight(b), a.n, n_a);
}

/// ((k ^ l) | (k' ^ l')) & ((k ^ l') | (k' ^ l)); zero exactly on admissible quadruples.
[[nodiscard]] inline BasisIndex admissible_q(const BasisIndex& k, const BasisIndex& kp, const BasisIndex& l,
                                             const BasisIndex& lp) {
    return ((k ^ l) | (kp ^ lp)) & ((k ^ lp) | (kp ^ l));
}

/// Symmetric coupling Delta(k, k'; l, l'; n_A) = g((k^l)|(k'^l'), (k^l')|(k'^l); n_A).
[[nodiscard]] inline Rational coupling_delta(const BasisIndex& k, const BasisIndex& kp, const BasisIndex& l,
                                             const BasisIndex& lp, int n_a) {
    return g((k ^ l) | (kp ^ lp), (k ^ lp) | (kp ^ l), n_a);
}

/// sum_m g(l ^ m, m; n_A) over all m in X^n, in exact arithmetic.
[[nodiscard]] inline Rational normalization_row_sum(index_t l, const GHatGrid& grid) {
    const int n = grid.n();
    const index_t dim = index_t{1} << n;
    if (l >= dim) throw std::out_of_range("label out of range");
    Rational acc = 0;
    for (index_t m = 0; m < dim; ++m) {
        const index_t a = l ^ m;
        if ((a & m) != 0) continue;
        acc += grid(popcount(a), popcount(m));
    }
    return acc;
}

// ============================================================================
// Monomial counts
// ============================================================================

struct MonomialCounts {
    BigInt n1;  ///< distinct |z_k|^4
    BigInt n2;  ///< distinct |z_k|^2 |z_h|^2, k != h
    BigInt n4;  ///< distinct Re[z z conj(z) conj(z)] with four distinct labels

    friend bool operator==(const MonomialCounts&, const MonomialCounts&) = default;
};

/// sum_{1 <= s, t <= [(n+1)/2]} C(n, s) C(n-s, t): the number of nonzero
/// coupling weights g(l, m; [n/2]) with l, m both nonzero.
[[nodiscard]] inline BigInt coupling_entry_count(int n) {
    detail::check_qubits(n);
    const int top = (n + 1) / 2;
    BigInt acc = 0;
    for (int s = 1; s <= top; ++s)
        for (int t = 1; t <= top; ++t) acc += binomial_int(n, s) * binomial_int(n - s, t);
    return acc;
}

[[nodiscard]] inline MonomialCounts monomial_counts(int n) {
    detail::check_qubits(n);
    if (n < 2) throw std::invalid_argument("monomial_counts requires n >= 2");
    const auto un = static_cast<unsigned>(n);
    const BigInt n1 = pow2(un);
    // 2^n / (3 + (-1)^n) is 2^(n-2) for even n and 2^(n-1) for odd n.
    const BigInt n2 = pow2(2 * un - 2) - pow2(un - 1) + pow2(n % 2 == 0 ? un - 2 : un - 1) * binomial_int(n, n / 2);
    const BigInt n4 = pow2(un) * coupling_entry_count(n) / 8;
    return {n1, n2, n4};
}

// ============================================================================
// CouplingTable
// ============================================================================

/// Every nonzero g(l, m; [n/2]) with l, m != 0, in (l, m) lexicographic order,
/// plus the weights of the l = 0 / m = 0 terms.
class CouplingTable {
public:
    struct Entry {
        std::uint32_t l;
        std::uint32_t m;
        std::uint8_t s;  ///< |l|
        std::uint8_t t;  ///< |m|
    };

    /// Upper bound on stored entries (about 1.6 GB); reached near n = 17.
    static constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 27;

    explicit CouplingTable(int n) : n_(n), n_a_(n / 2), grid_(checked(n), n / 2) {
        const index_t dim = index_t{1} << n;
        const std::uint64_t expected = coupling_entry_count(n).convert_to<std::uint64_t>();
        if (expected > kMaxEntries)
            throw std::length_error("coupling table for n = " + std::to_string(n) + " needs " +
                                    std::to_string(expected) + " entries");
        values_.resize(static_cast<std::size_t>((n + 1) * (n + 1)));
        for (int s = 0; s <= n; ++s)
            for (int t = 0; t <= n; ++t) values_[static_cast<std::size_t>(s * (n + 1) + t)] = to_double(grid_(s, t));

        entries_.reserve(expected);
        const index_t all = dim - 1;
        for (index_t l = 1; l < dim; ++l) {
            const index_t comp = all & ~l;
            const int s = popcount(l);
            for (index_t m = comp & (~comp + 1); m != 0; m = (m - comp) & comp) {
                const int t = popcount(m);
                if (grid_(s, t) == 0) continue;
                entries_.push_back({static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(m),
                                    static_cast<std::uint8_t>(s), static_cast<std::uint8_t>(t)});
            }
        }
        const Rational da = Rational(pow2(static_cast<unsigned>(n_a_)));
        const Rational db = Rational(pow2(static_cast<unsigned>(n - n_a_)));
        constant_ = (da + db - 1) / Rational(pow2(static_cast<unsigned>(n)));
    }

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int n_a() const noexcept { return n_a_; }
    [[nodiscard]] index_t dim() const noexcept { return index_t{1} << n_; }
    [[nodiscard]] std::span<const Entry> entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] const GHatGrid& grid() const noexcept { return grid_; }

    /// Exact weight of an entry.
    [[nodiscard]] const Rational& weight(const Entry& e) const { return grid_(e.s, e.t); }
    [[nodiscard]] double weight_value(const Entry& e) const { return value(e.s, e.t); }
    /// ghat(s, t; [n/2]) as double.
    [[nodiscard]] double value(int s, int t) const { return values_[static_cast<std::size_t>(s * (n_ + 1) + t)]; }

    /// (N_A + N_B - 1) / N, the phase-independent part of pi_ME on uniform states.
    [[nodiscard]] const Rational& constant() const noexcept { return constant_; }

private:
    static int checked(int n) {
        if (n < 2 || n > kMaxQubits)
            throw std::out_of_range("coupling table needs 2 <= n <= " + std::to_string(kMaxQubits));
        return n;
    }

    int n_;
    int n_a_;
    GHatGrid grid_;
    std::vector<double> values_;
    std::vector<Entry> entries_;
    Rational constant_;
};

[[nodiscard]] inline CouplingTable build_coupling_table(int n) { return CouplingTable(n); }

// ============================================================================
// Evaluators
// ============================================================================

namespace detail {

inline constexpr std::size_t kReductionChunks = 64;
inline constexpr int kCompensatedFromQubits = 10;

inline void check_table(const CouplingTable& table, int n) {
    if (table.n() != n)
        throw std::invalid_argument("coupling table built for n = " + std::to_string(table.n()) +
                                    ", state has n = " + std::to_string(n));
}

/// sum over table entries of weight * term(l, m), reduced over a fixed chunk
/// tree so that the result does not depend on the worker count.
template <class Term>
double table_reduce(const CouplingTable& table, unsigned threads, Term&& term) {
    const auto entries = table.entries();
    if (entries.empty()) return 0.0;
    const std::size_t chunks = std::min(kReductionChunks, entries.size());
    std::vector<double> partial(chunks, 0.0);
    detail::parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t begin = entries.size() * c / chunks;
        const std::size_t end = entries.size() * (c + 1) / chunks;
        CompensatedSum acc;
        for (std::size_t i = begin; i < end; ++i)
            acc += table.weight_value(entries[i]) * term(entries[i].l, entries[i].m);
        partial[c] = acc.value();
    });
    CompensatedSum total;
    for (double p : partial) total += p;
    return total.value();
}

template <class Fn>
double k_sum(index_t dim, bool compensated, Fn&& fn) {
    if (compensated) {
        CompensatedSum acc;
        for (index_t k = 0; k < dim; ++k) acc += fn(k);
        return acc.value();
    }
    double acc = 0.0;
    for (index_t k = 0; k < dim; ++k) acc += fn(k);
    return acc;
}

/// sum_{k,l,m nonzero} g Re[z_k z_{k^l^m} conj(z_{k^l}) conj(z_{k^m})].
inline double interference_term(std::span<const Amplitude> z, const CouplingTable& table, unsigned threads) {
    const index_t dim = z.size();
    const bool comp = table.n() >= kCompensatedFromQubits;
    return table_reduce(table, threads, [&](index_t l, index_t m) {
        return k_sum(dim, comp, [&](index_t k) {
            return (z[k] * z[k ^ l ^ m] * std::conj(z[k ^ l]) * std::conj(z[k ^ m])).real();
        });
    });
}

}  // namespace detail

/// Mean of pi_A over all balanced bipartitions (purity_form2 per bipartition).
[[nodiscard]] inline double pi_me_form1(const PureState& state, unsigned threads = 1) {
    if (state.n() < 2) throw std::invalid_argument("pi_ME requires n >= 2");
    const auto masks = balanced_masks(state.n());
    std::vector<double> values(masks.size());
    detail::parallel_for(masks.size(), threads, [&](std::size_t i) {
        values[i] = detail::purity_xor_sum(state.amplitudes(), state.n(), masks[i]);
    });
    detail::CompensatedSum acc;
    for (double v : values) acc += v;
    return acc.value() / static_cast<double>(masks.size());
}

/// Three-index form split as |z|^4 terms + pair terms + table-driven interference.
[[nodiscard]] inline double pi_me_form2(const PureState& state, const CouplingTable& table, unsigned threads = 1) {
    detail::check_table(table, state.n());
    const auto z = state.amplitudes();
    const index_t dim = z.size();
    const int n = state.n();
    std::vector<double> prob(dim);
    for (index_t k = 0; k < dim; ++k) prob[k] = std::norm(z[k]);

    detail::CompensatedSum diag;
    for (double p : prob) diag += p * p;

    // 2 sum_{l != 0} ghat(|l|, 0) sum_k P_k P_{k^l}
    detail::CompensatedSum pairs;
    for (index_t l = 1; l < dim; ++l) {
        const double w = table.value(popcount(l), 0);
        if (w == 0.0) continue;
        double part = 0.0;
        for (index_t k = 0; k < dim; ++k) part += prob[k] * prob[k ^ l];
        pairs += 2.0 * w * part;
    }
    (void)n;
    const double inter = detail::interference_term(z, table, threads);
    return diag.value() + pairs.value() + inter;
}

/// The subtracted sum of form 4: 1/2 sum g |z_k z_{k^l^m} - z_{k^l} z_{k^m}|^2 (nonnegative).
[[nodiscard]] inline double entanglement_deficit(const PureState& state, const CouplingTable& table,
                                                 unsigned threads = 1) {
    detail::check_table(table, state.n());
    const auto z = state.amplitudes();
    const index_t dim = z.size();
    const bool comp = table.n() >= detail::kCompensatedFromQubits;
    const double sum = detail::table_reduce(table, threads, [&](index_t l, index_t m) {
        return detail::k_sum(dim, comp, [&](index_t k) { return std::norm(z[k] * z[k ^ l ^ m] - z[k ^ l] * z[k ^ m]); });
    });
    return 0.5 * sum;
}

/// pi_ME = 1 - 1/2 sum g |z_k z_{k^l^m} - z_{k^l} z_{k^m}|^2.
[[nodiscard]] inline double pi_me_form4(const PureState& state, const CouplingTable& table, unsigned threads = 1) {
    return 1.0 - entanglement_deficit(state, table, threads);
}

[[nodiscard]] inline double pi_me(const PureState& state, const CouplingTable& table, unsigned threads = 1) {
    return pi_me_form2(state, table, threads);
}

/// pi_ME of the uniform state zeta / sqrt(N): constant + (1/N^2) sum g Re(...).
[[nodiscard]] inline double pi_me_uniform(std::span<const Amplitude> zeta, const CouplingTable& table,
                                          unsigned threads = 1) {
    if (zeta.size() != table.dim()) throw std::invalid_argument("phase vector length does not match table");
    for (const auto& p : zeta)
        if (std::abs(std::abs(p) - 1.0) > 1e-12) throw std::invalid_argument("phases must have unit modulus");
    const double nn = static_cast<double>(zeta.size());
    return to_double(table.constant()) + detail::interference_term(zeta, table, threads) / (nn * nn);
}

[[nodiscard]] inline double pi_me_uniform(const SignVector& signs, const CouplingTable& table, unsigned threads = 1) {
    detail::check_table(table, signs.n);
    std::vector<Amplitude> zeta(signs.signs.begin(), signs.signs.end());
    return pi_me_uniform(zeta, table, threads);
}

/// N_A/(N_A-1) (1 - pi_ME) with N_A = 2^[n/2].
[[nodiscard]] inline double avg_linear_entropy(const PureState& state, const CouplingTable& table,
                                               unsigned threads = 1) {
    const double na = static_cast<double>(index_t{1} << (state.n() / 2));
    return na / (na - 1.0) * (1.0 - pi_me_form2(state, table, threads));
}

}  // namespace mmes
