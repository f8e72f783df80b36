// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file bipartite.hpp
 * @brief Reduced density matrices, Schmidt spectra, purity and the two
 *        bipartite entanglement measures of a pure n-qubit state.
 *
 * Two independent routes to the purity are provided: purity_form1 squares the
 * materialized reduced density matrix, purity_form2 evaluates the XOR-indexed
 * quartic sum directly on the amplitudes without building any matrix.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mmes/bitspace.hpp"
#include "mmes/detail/summation.hpp"
#include "mmes/states.hpp"

namespace mmes {

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kNegativeEigenvalueTolerance = -1e-10;
inline constexpr double kSchmidtCutoff = 1e-12;

// ============================================================================
// Types
// ============================================================================

struct DensityMatrix {
    Eigen::MatrixXcd rho;

    [[nodiscard]] Eigen::Index dim() const noexcept { return rho.rows(); }

    /// Throws std::domain_error unless rho is Hermitian, trace one and PSD.
    void validate() const {
        if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance)
            throw std::domain_error("density matrix is not Hermitian");
        if (std::abs(rho.trace() - Amplitude(1.0)) > kTraceTolerance)
            throw std::domain_error("density matrix trace differs from one");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < kNegativeEigenvalueTolerance)
            throw std::domain_error("density matrix has a negative eigenvalue");
    }
};

/// Eigenvalues of a reduced density matrix, non-increasing.  Values below
/// kSchmidtCutoff are kept apart in `zeros`.
struct SchmidtSpectrum {
    std::vector<double> values;
    std::vector<double> zeros;

    [[nodiscard]] double sum() const {
        double s = 0.0;
        for (double v : values) s += v;
        for (double v : zeros) s += v;
        return s;
    }
    [[nodiscard]] double max() const { return values.empty() ? 0.0 : values.front(); }
};

struct TermCounts {
    BigInt n1;  ///< monomials |z_k|^4
    BigInt n2;  ///< monomials |z_k|^2 |z_h|^2, k != h
    BigInt n4;  ///< interfering monomials with four distinct labels
};

// ============================================================================
// Implementation helpers on raw spans
// ============================================================================

namespace detail {

inline void check_split(int n, index_t mask) {
    if (mask == 0 || mask == full_mask(n))
        throw std::invalid_argument("subsystem mask must be a nonempty proper subset");
    if ((mask & ~full_mask(n)) != 0) throw std::out_of_range("subsystem mask exceeds register");
}

/// Embedded labels of every sub-label of `mask`, ascending by sub-label.
inline std::vector<index_t> embedded_labels(index_t mask) {
    const index_t count = index_t{1} << popcount(mask);
    std::vector<index_t> out(count);
    for (index_t l = 0; l < count; ++l) out[l] = embed_bits(l, mask);
    return out;
}

inline Eigen::MatrixXcd reduced_matrix(std::span<const Amplitude> z, int n, index_t mask) {
    check_split(n, mask);
    const auto rows = embedded_labels(mask);
    const auto env = embedded_labels(full_mask(n) & ~mask);
    const auto d = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i; j < d; ++j) {
            Amplitude acc{};
            for (index_t m : env) acc += z[rows[i] | m] * std::conj(z[rows[j] | m]);
            rho(i, j) = acc;
            if (i != j) rho(j, i) = std::conj(acc);
        }
    return rho;
}

/// sum_k sum_{l in X^A} sum_{m in X^B} z_k z_{k^l^m} conj(z_{k^l}) conj(z_{k^m}).
inline double purity_xor_sum(std::span<const Amplitude> z, int n, index_t mask) {
    check_split(n, mask);
    const index_t comp = full_mask(n) & ~mask;
    const index_t dim = z.size();
    CompensatedSum total;
    index_t l = 0;
    do {
        index_t m = 0;
        do {
            double part = 0.0;
            for (index_t k = 0; k < dim; ++k)
                part += (z[k] * z[k ^ l ^ m] * std::conj(z[k ^ l]) * std::conj(z[k ^ m])).real();
            total += part;
            m = (m - comp) & comp;
        } while (m != 0);
        l = (l - mask) & mask;
    } while (l != 0);
    return total.value();
}

}  // namespace detail

// ============================================================================
// Operations
// ============================================================================

/// rho_A with entries (l, l') = sum_m z_{l (+) m} conj(z_{l' (+) m}).
[[nodiscard]] inline DensityMatrix reduced_density_matrix(const PureState& state, const QubitMask& a) {
    detail::check_same_n(state.n(), a.n);
    return {detail::reduced_matrix(state.amplitudes(), state.n(), a.bits)};
}

/// Tr rho_A^2 from the materialized reduced density matrix.
[[nodiscard]] inline double purity_form1(const PureState& state, const QubitMask& a) {
    const auto rho = reduced_density_matrix(state, a).rho;
    return rho.cwiseAbs2().sum();
}

/// Tr rho_A^2 as the XOR-indexed quadruple sum over amplitudes.
[[nodiscard]] inline double purity_form2(const PureState& state, const QubitMask& a) {
    detail::check_same_n(state.n(), a.n);
    return detail::purity_xor_sum(state.amplitudes(), state.n(), a.bits);
}

[[nodiscard]] inline double purity(const PureState& state, const QubitMask& a) { return purity_form2(state, a); }

[[nodiscard]] inline SchmidtSpectrum schmidt_spectrum(const PureState& state, const QubitMask& a) {
    const auto rho = reduced_density_matrix(state, a).rho;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), std::greater<>());
    SchmidtSpectrum out;
    for (double v : ev) (v >= kSchmidtCutoff ? out.values : out.zeros).push_back(v);
    return out;
}

/// N_A/(N_A-1) (1 - max lambda) with N_A = 2^|A| for the given side A.  The
/// value reaches 1 only when A is the smaller side of the bipartition.
[[nodiscard]] inline double entanglement_E(const PureState& state, const QubitMask& a) {
    const Bipartition bp(a);  // validates the split
    const double na = std::ldexp(1.0, a.size());
    const double e = na / (na - 1.0) * (1.0 - schmidt_spectrum(state, bp.side()).max());
    return std::clamp(e, 0.0, 1.0);
}

/// N_A/(N_A-1) (1 - pi_A) with N_A = 2^|A| for the given side A.
[[nodiscard]] inline double linear_entropy_L(const PureState& state, const QubitMask& a) {
    const Bipartition bp(a);
    const double na = std::ldexp(1.0, a.size());
    const double l = na / (na - 1.0) * (1.0 - purity_form2(state, bp.side()));
    return std::clamp(l, 0.0, 1.0);
}

/// Number of monomials of each kind in the quartic purity sum of one bipartition.
[[nodiscard]] inline TermCounts bipartite_term_counts(int n, int n_a) {
    detail::check_qubits(n);
    if (n_a < 1 || n_a > n - 1) throw std::out_of_range("n_A must lie in [1, n-1]");
    const BigInt total = pow2(n);
    const BigInt da = pow2(n_a);
    const BigInt db = pow2(n - n_a);
    return {total, total * (da + db - 2), total * (da - 1) * (db - 1)};
}

/// Purity of a uniform-modulus state, written in its phases only.
[[nodiscard]] inline double purity_uniform(const PolarState& p, const QubitMask& a) {
    detail::check_same_n(p.n, a.n);
    detail::check_split(p.n, a.bits);
    if (!has_uniform_moduli(p)) throw std::invalid_argument("purity_uniform requires uniform moduli");
    const index_t dim = p.phases.size();
    const index_t mask = a.bits;
    const index_t comp = full_mask(p.n) & ~mask;
    const double da = static_cast<double>(index_t{1} << popcount(mask));
    const double db = static_cast<double>(index_t{1} << popcount(comp));
    const double nn = static_cast<double>(dim);
    const auto& zeta = p.phases;
    detail::CompensatedSum acc;
    for (index_t l = mask & (~mask + 1); l != 0; l = (l - mask) & mask)
        for (index_t m = comp & (~comp + 1); m != 0; m = (m - comp) & comp) {
            double part = 0.0;
            for (index_t k = 0; k < dim; ++k)
                part += (zeta[k] * std::conj(zeta[k ^ l]) * zeta[k ^ l ^ m] * std::conj(zeta[k ^ m])).real();
            acc += part;
        }
    return (da + db - 1.0) / nn + acc.value() / (nn * nn);
}

}  // namespace mmes
