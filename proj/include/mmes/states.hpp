// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file states.hpp
 * @brief Pure n-qubit states, the state families used throughout the library,
 *        and the modulus/phase split of the amplitudes.
 */

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mmes/bitspace.hpp"

namespace mmes {

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kUnitarityTolerance = 1e-10;

namespace detail {
inline index_t dimension(int n) {
    check_qubits(n, kMaxQubits);
    return index_t{1} << n;
}

inline double squared_norm(std::span<const Amplitude> z) {
    double s = 0.0;
    for (const auto& a : z) s += std::norm(a);
    return s;
}
}  // namespace detail

// ============================================================================
// PureState
// ============================================================================

/// Normalized amplitude vector z_k, k in X^n.
class PureState {
public:
    /// Wraps amplitudes that are already normalized (within kNormTolerance).
    static PureState from_normalized(int n, std::vector<Amplitude> amps) {
        PureState s(n, std::move(amps), 1.0);
        const double norm2 = detail::squared_norm(s.amps_);
        if (std::abs(norm2 - 1.0) > kNormTolerance)
            throw std::invalid_argument("state is not normalized: squared norm " + std::to_string(norm2));
        return s;
    }

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] index_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] const Amplitude& operator[](index_t k) const { return amps_[k]; }
    /// Factor applied by from_amplitudes to reach unit norm (1 otherwise).
    [[nodiscard]] double scale() const noexcept { return scale_; }

private:
    friend PureState from_amplitudes(int n, std::vector<Amplitude> raw);

    PureState(int n, std::vector<Amplitude> amps, double scale)
        : n_(n), amps_(std::move(amps)), scale_(scale) {
        if (amps_.size() != detail::dimension(n))
            throw std::invalid_argument("expected " + std::to_string(detail::dimension(n)) +
                                        " amplitudes, got " + std::to_string(amps_.size()));
    }

    int n_;
    std::vector<Amplitude> amps_;
    double scale_;
};

/// Normalized copy of a raw amplitude vector.
inline PureState from_amplitudes(int n, std::vector<Amplitude> raw) {
    if (raw.size() != detail::dimension(n))
        throw std::invalid_argument("expected " + std::to_string(detail::dimension(n)) +
                                    " amplitudes, got " + std::to_string(raw.size()));
    const double norm = std::sqrt(detail::squared_norm(raw));
    if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("cannot normalize a zero vector");
    const double scale = 1.0 / norm;
    if (scale != 1.0)
        for (auto& a : raw) a *= scale;
    return PureState(n, std::move(raw), scale);
}

// ============================================================================
// SignVector
// ============================================================================

/// A vector of +1/-1 entries of length 2^n, i.e. the phases of a real uniform state.
struct SignVector {
    int n = 1;
    std::vector<std::int8_t> signs;

    SignVector() = default;
    SignVector(int qubits, std::vector<std::int8_t> s) : n(qubits), signs(std::move(s)) {
        if (signs.size() != detail::dimension(qubits))
            throw std::invalid_argument("sign vector length " + std::to_string(signs.size()) +
                                        " does not match 2^" + std::to_string(qubits));
        for (auto v : signs)
            if (v != 1 && v != -1) throw std::invalid_argument("sign entries must be +1 or -1");
    }

    static SignVector all_plus(int qubits) {
        return {qubits, std::vector<std::int8_t>(detail::dimension(qubits), 1)};
    }

    /// Entry k is -1 exactly when bit k of `word` is set (requires 2^n <= 64).
    static SignVector from_word(int qubits, std::uint64_t word) {
        const index_t dim = detail::dimension(qubits);
        if (dim > 64) throw std::invalid_argument("word encoding needs 2^n <= 64");
        std::vector<std::int8_t> s(dim);
        for (index_t k = 0; k < dim; ++k) s[k] = ((word >> k) & 1U) ? -1 : 1;
        return {qubits, std::move(s)};
    }

    [[nodiscard]] std::uint64_t to_word() const {
        if (signs.size() > 64) throw std::invalid_argument("word encoding needs 2^n <= 64");
        std::uint64_t w = 0;
        for (std::size_t k = 0; k < signs.size(); ++k)
            if (signs[k] < 0) w |= std::uint64_t{1} << k;
        return w;
    }

    /// Parses a string of '+' and '-' of length 2^n.
    static SignVector parse(std::string_view text) {
        const std::size_t len = text.size();
        if (len < 2 || (len & (len - 1)) != 0)
            throw std::invalid_argument("sign string length " + std::to_string(len) + " is not 2^n with n >= 1");
        const int qubits = std::countr_zero(len);
        std::vector<std::int8_t> s(len);
        for (std::size_t k = 0; k < len; ++k) {
            if (text[k] == '+')
                s[k] = 1;
            else if (text[k] == '-')
                s[k] = -1;
            else
                throw std::invalid_argument(std::string("invalid sign character '") + text[k] + "'");
        }
        return {qubits, std::move(s)};
    }

    [[nodiscard]] std::string str() const {
        std::string out(signs.size(), '+');
        for (std::size_t k = 0; k < signs.size(); ++k)
            if (signs[k] < 0) out[k] = '-';
        return out;
    }

    [[nodiscard]] SignVector negated() const {
        SignVector out = *this;
        for (auto& v : out.signs) v = static_cast<std::int8_t>(-v);
        return out;
    }

    friend bool operator==(const SignVector&, const SignVector&) = default;
};

// ============================================================================
// PolarState
// ============================================================================

/// z_k = r_k * zeta_k with r_k >= 0 and |zeta_k| = 1 (zeta_k = 1 where r_k = 0).
struct PolarState {
    int n = 1;
    std::vector<double> moduli;
    std::vector<Amplitude> phases;
};

[[nodiscard]] inline PolarState polar(const PureState& state) {
    PolarState p{state.n(), {}, {}};
    p.moduli.reserve(state.dim());
    p.phases.reserve(state.dim());
    for (const auto& z : state.amplitudes()) {
        const double r = std::abs(z);
        p.moduli.push_back(r);
        p.phases.push_back(r > 0.0 ? z / r : Amplitude{1.0, 0.0});
    }
    return p;
}

[[nodiscard]] inline PureState assemble(const PolarState& p) {
    const index_t dim = detail::dimension(p.n);
    if (p.moduli.size() != dim || p.phases.size() != dim)
        throw std::invalid_argument("polar state has inconsistent lengths");
    std::vector<Amplitude> z(dim);
    for (index_t k = 0; k < dim; ++k) z[k] = p.moduli[k] * p.phases[k];
    return PureState::from_normalized(p.n, std::move(z));
}

/// True when every modulus equals 1/sqrt(2^n) within `tol`.
[[nodiscard]] inline bool has_uniform_moduli(const PolarState& p, double tol = 1e-12) {
    const double r = 1.0 / std::sqrt(static_cast<double>(p.moduli.size()));
    for (double m : p.moduli)
        if (std::abs(m - r) > tol) return false;
    return true;
}

// ============================================================================
// Constructors
// ============================================================================

/// z_k = s_k / sqrt(2^n).
[[nodiscard]] inline PureState uniform_from_signs(const SignVector& s) {
    const double r = 1.0 / std::sqrt(static_cast<double>(s.signs.size()));
    std::vector<Amplitude> z(s.signs.size());
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = Amplitude{r * s.signs[k], 0.0};
    return PureState::from_normalized(s.n, std::move(z));
}

/// z_k = zeta_k / sqrt(2^n) for unit-modulus phases.
[[nodiscard]] inline PureState uniform_from_phases(int n, std::span<const Amplitude> phases) {
    const index_t dim = detail::dimension(n);
    if (phases.size() != dim) throw std::invalid_argument("phase vector length mismatch");
    const double r = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<Amplitude> z(dim);
    for (index_t k = 0; k < dim; ++k) {
        if (std::abs(std::abs(phases[k]) - 1.0) > 1e-12) throw std::invalid_argument("phases must have unit modulus");
        z[k] = r * phases[k];
    }
    return PureState::from_normalized(n, std::move(z));
}

[[nodiscard]] inline PureState basis_state(int n, index_t k) {
    const index_t dim = detail::dimension(n);
    if (k >= dim) throw std::out_of_range("basis label out of range");
    std::vector<Amplitude> z(dim);
    z[k] = 1.0;
    return PureState::from_normalized(n, std::move(z));
}

/// Product state with z_k = prod_i alpha^i_{k_i}; pairs[i-1] belongs to qubit i.
[[nodiscard]] inline PureState fully_factorized(std::span<const std::array<Amplitude, 2>> pairs) {
    const int n = static_cast<int>(pairs.size());
    const index_t dim = detail::dimension(n);
    for (const auto& p : pairs)
        if (std::abs(std::norm(p[0]) + std::norm(p[1]) - 1.0) > kNormTolerance)
            throw std::invalid_argument("single-qubit amplitude pair is not normalized");
    std::vector<Amplitude> z(dim, Amplitude{1.0, 0.0});
    for (index_t k = 0; k < dim; ++k)
        for (int q = 1; q <= n; ++q) z[k] *= pairs[q - 1][(k >> qubit_bit(n, q)) & 1U];
    return PureState::from_normalized(n, std::move(z));
}

[[nodiscard]] inline PureState ghz(int n) {
    if (n < 2) throw std::invalid_argument("ghz requires n >= 2");
    const index_t dim = detail::dimension(n);
    std::vector<Amplitude> z(dim);
    z.front() = z.back() = 1.0 / std::numbers::sqrt2;
    return PureState::from_normalized(n, std::move(z));
}

namespace detail {
inline void check_unitary(const Eigen::MatrixXcd& u, index_t dim, const char* what) {
    if (static_cast<index_t>(u.rows()) != dim || static_cast<index_t>(u.cols()) != dim)
        throw std::invalid_argument(std::string(what) + " has wrong dimensions");
    const Eigen::MatrixXcd defect = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    if (defect.cwiseAbs().maxCoeff() > kUnitarityTolerance)
        throw std::invalid_argument(std::string(what) + " is not unitary");
}

/// Injects an n_A-bit label into n_B >= n_A bits: bit j of the result is bit
/// (j mod n_A) of l.  The low n_A bits reproduce l; higher bits repeat it.
inline index_t repeat_embed(index_t l, int n_a, int n_b) {
    index_t out = 0;
    for (int j = 0; j < n_b; ++j)
        if ((l >> (j % n_a)) & 1U) out |= index_t{1} << j;
    return out;
}
}  // namespace detail

/// The maximally entangled state N_A^{-1/2} sum_l U^A|l>_A (x) U^B|e(l)>_B for the
/// bipartition defined by `a`.  e places l in the low bits of the larger side and
/// repeats it cyclically in the remaining bits, so identities give GHZ for n_A = 1.
[[nodiscard]] inline PureState max_entangled_state(const QubitMask& a,
                                                   const std::optional<Eigen::MatrixXcd>& u_a = std::nullopt,
                                                   const std::optional<Eigen::MatrixXcd>& u_b = std::nullopt) {
    detail::check_qubits(a.n, kMaxQubits);
    const Bipartition bp(a);
    const QubitMask side = bp.side();
    const QubitMask rest = bp.other();
    const int na = side.size();
    const int nb = rest.size();
    const index_t da = index_t{1} << na;
    const index_t db = index_t{1} << nb;
    if (u_a) detail::check_unitary(*u_a, da, "U^A");
    if (u_b) detail::check_unitary(*u_b, db, "U^B");

    std::vector<Amplitude> z(index_t{1} << a.n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(da));
    for (index_t ka = 0; ka < da; ++ka)
        for (index_t kb = 0; kb < db; ++kb) {
            Amplitude acc{};
            for (index_t l = 0; l < da; ++l) {
                const index_t lb = detail::repeat_embed(l, na, nb);
                const Amplitude ua = u_a ? (*u_a)(static_cast<Eigen::Index>(ka), static_cast<Eigen::Index>(l))
                                         : Amplitude(ka == l ? 1.0 : 0.0);
                const Amplitude ub = u_b ? (*u_b)(static_cast<Eigen::Index>(kb), static_cast<Eigen::Index>(lb))
                                         : Amplitude(kb == lb ? 1.0 : 0.0);
                acc += ua * ub;
            }
            z[embed_bits(ka, side.bits) | embed_bits(kb, rest.bits)] = norm * acc;
        }
    return PureState::from_normalized(a.n, std::move(z));
}

/// Haar-random pure state: a normalized standard complex Gaussian vector.
[[nodiscard]] inline PureState random_state(int n, std::uint64_t seed) {
    const index_t dim = detail::dimension(n);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Amplitude> z(dim);
    for (auto& a : z) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a = {re, im};
    }
    return from_amplitudes(n, std::move(z));
}

/// Uniform-modulus state with i.i.d. phases uniform on the unit circle.
[[nodiscard]] inline PolarState random_phases(int n, std::uint64_t seed) {
    const index_t dim = detail::dimension(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    PolarState p{n, std::vector<double>(dim, 1.0 / std::sqrt(static_cast<double>(dim))), {}};
    p.phases.reserve(dim);
    for (index_t k = 0; k < dim; ++k) p.phases.push_back(std::polar(1.0, angle(rng)));
    return p;
}

/// Random unitary of size dim (QR of a complex Gaussian matrix, phase-fixed).
[[nodiscard]] inline Eigen::MatrixXcd random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = {re, im};
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Amplitude d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

// ============================================================================
// Qubit operations
// ============================================================================

/// Relabels qubits: qubit i of `state` becomes qubit perm[i-1] of the result.
[[nodiscard]] inline PureState permute_qubits(const PureState& state, std::span<const int> perm) {
    const int n = state.n();
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation has wrong length");
    std::vector<bool> seen(n + 1, false);
    for (int p : perm) {
        if (p < 1 || p > n || seen[p]) throw std::invalid_argument("not a permutation of 1..n");
        seen[p] = true;
    }
    std::vector<Amplitude> z(state.dim());
    for (index_t k = 0; k < state.dim(); ++k) {
        index_t out = 0;
        for (int q = 1; q <= n; ++q)
            if ((k >> qubit_bit(n, q)) & 1U) out |= index_t{1} << qubit_bit(n, perm[q - 1]);
        z[out] = state[k];
    }
    return PureState::from_normalized(n, std::move(z));
}

/// Applies a 2x2 unitary to qubit `qubit` (1-based).
[[nodiscard]] inline PureState apply_single_qubit(const PureState& state, int qubit, const Eigen::Matrix2cd& u) {
    if (qubit < 1 || qubit > state.n()) throw std::out_of_range("qubit label out of range");
    detail::check_unitary(u, 2, "single-qubit gate");
    const index_t bit = index_t{1} << qubit_bit(state.n(), qubit);
    std::vector<Amplitude> z(state.amplitudes().begin(), state.amplitudes().end());
    for (index_t k = 0; k < state.dim(); ++k) {
        if (k & bit) continue;
        const Amplitude a0 = state[k];
        const Amplitude a1 = state[k | bit];
        z[k] = u(0, 0) * a0 + u(0, 1) * a1;
        z[k | bit] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return from_amplitudes(state.n(), std::move(z));
}

}  // namespace mmes
