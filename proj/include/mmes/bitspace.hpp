// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file bitspace.hpp
 * @brief Basis labels, qubit subsets and exact combinatorics.
 *
 * Bit convention: for an n-qubit register, qubit i (1-based) lives at bit
 * position n - i.  A basis label k_1 k_2 ... k_n therefore reads literally as
 * the binary numeral of its index, e.g. |011> of three qubits is index 3.
 * Every module in this library uses that ordering.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mmes {

using index_t = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Largest register for which state vectors are materialized.
inline constexpr int kMaxQubits = 24;
/// Largest n accepted by the pure counting routines.
inline constexpr int kMaxCountingQubits = 64;

// ============================================================================
// Raw bit helpers (hot loops work on plain integers)
// ============================================================================

[[nodiscard]] constexpr index_t full_mask(int n) noexcept {
    return n >= 64 ? ~index_t{0} : ((index_t{1} << n) - 1);
}

[[nodiscard]] constexpr int popcount(index_t x) noexcept { return std::popcount(x); }

/// Bit position of qubit `qubit` (1-based) in an n-qubit label.
[[nodiscard]] constexpr int qubit_bit(int n, int qubit) noexcept { return n - qubit; }

/// Gathers the bits of `k` selected by `mask` into the low bits of the result
/// (software PEXT).  Relative order is kept, so qubit order is preserved.
[[nodiscard]] constexpr index_t extract_bits(index_t k, index_t mask) noexcept {
    index_t out = 0;
    int pos = 0;
    while (mask != 0) {
        const index_t low = mask & (~mask + 1);
        if (k & low) out |= index_t{1} << pos;
        ++pos;
        mask ^= low;
    }
    return out;
}

/// Scatters the low bits of `l` to the positions selected by `mask`
/// (software PDEP).  Inverse of extract_bits on its image.
[[nodiscard]] constexpr index_t embed_bits(index_t l, index_t mask) noexcept {
    index_t out = 0;
    int pos = 0;
    while (mask != 0) {
        const index_t low = mask & (~mask + 1);
        if ((l >> pos) & 1U) out |= low;
        ++pos;
        mask ^= low;
    }
    return out;
}

/// Next integer with the same popcount (Gosper's hack).  `x` must be nonzero.
[[nodiscard]] constexpr index_t next_same_popcount(index_t x) noexcept {
    const index_t c = x & (~x + 1);
    const index_t r = x + c;
    return (((r ^ x) >> 2) / c) | r;
}

// ============================================================================
// Strong types
// ============================================================================

namespace detail {
inline void check_qubits(int n, int max_n = kMaxCountingQubits) {
    if (n < 1 || n > max_n)
        throw std::invalid_argument("qubit count " + std::to_string(n) + " outside [1, " +
                                    std::to_string(max_n) + "]");
}
}  // namespace detail

/// A computational-basis label k in X^n.
struct BasisIndex {
    index_t value = 0;
    int n = 1;

    BasisIndex() = default;
    BasisIndex(index_t v, int qubits) : value(v), n(qubits) {
        detail::check_qubits(qubits);
        if ((v & ~full_mask(qubits)) != 0)
            throw std::out_of_range("basis index " + std::to_string(v) + " does not fit in " +
                                    std::to_string(qubits) + " qubits");
    }

    /// Value of qubit `qubit` (1-based).
    [[nodiscard]] int bit(int qubit) const { return static_cast<int>((value >> qubit_bit(n, qubit)) & 1U); }

    friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

/// A subset A of the qubits {1..n}; set bits follow the qubit <-> bit convention.
struct QubitMask {
    index_t bits = 0;
    int n = 1;

    QubitMask() = default;
    QubitMask(index_t b, int qubits) : bits(b), n(qubits) {
        detail::check_qubits(qubits);
        if ((b & ~full_mask(qubits)) != 0)
            throw std::out_of_range("mask does not fit in " + std::to_string(qubits) + " qubits");
    }

    /// Builds a mask from 1-based qubit labels.
    static QubitMask from_qubits(int qubits, std::initializer_list<int> labels) {
        return from_qubits(qubits, std::vector<int>(labels));
    }
    static QubitMask from_qubits(int qubits, const std::vector<int>& labels) {
        detail::check_qubits(qubits);
        index_t b = 0;
        for (int q : labels) {
            if (q < 1 || q > qubits)
                throw std::out_of_range("qubit label " + std::to_string(q) + " outside [1, " +
                                        std::to_string(qubits) + "]");
            b |= index_t{1} << qubit_bit(qubits, q);
        }
        return {b, qubits};
    }

    [[nodiscard]] int size() const { return popcount(bits); }
    [[nodiscard]] QubitMask complement() const { return {full_mask(n) & ~bits, n}; }
    [[nodiscard]] bool contains(int qubit) const { return (bits >> qubit_bit(n, qubit)) & 1U; }

    /// 1-based qubit labels in ascending order.
    [[nodiscard]] std::vector<int> qubits() const {
        std::vector<int> out;
        for (int q = 1; q <= n; ++q)
            if (contains(q)) out.push_back(q);
        return out;
    }

    friend bool operator==(const QubitMask&, const QubitMask&) = default;
};

/// A bipartition (A, complement).  The stored side always satisfies
/// 1 <= n_A <= n - n_A; a larger mask is replaced by its complement.
class Bipartition {
public:
    explicit Bipartition(QubitMask a) : a_(a) {
        if (a.bits == 0 || a.bits == full_mask(a.n))
            throw std::invalid_argument("bipartition side must be a nonempty proper subset");
        if (2 * a.size() > a.n) a_ = a.complement();
    }

    [[nodiscard]] const QubitMask& side() const noexcept { return a_; }
    [[nodiscard]] QubitMask other() const { return a_.complement(); }
    [[nodiscard]] int n() const noexcept { return a_.n; }
    [[nodiscard]] int n_a() const { return a_.size(); }
    [[nodiscard]] index_t dim_a() const { return index_t{1} << n_a(); }
    [[nodiscard]] bool balanced() const { return n_a() == n() / 2; }

private:
    QubitMask a_;
};

// ============================================================================
// Label algebra
// ============================================================================

[[nodiscard]] inline int weight(const BasisIndex& k) { return popcount(k.value); }

namespace detail {
inline void check_same_n(int a, int b) {
    if (a != b)
        throw std::invalid_argument("mismatched qubit counts " + std::to_string(a) + " and " +
                                    std::to_string(b));
}
}  // namespace detail

[[nodiscard]] inline BasisIndex bitwise_xor(const BasisIndex& a, const BasisIndex& b) {
    detail::check_same_n(a.n, b.n);
    return {a.value ^ b.value, a.n};
}
[[nodiscard]] inline BasisIndex bitwise_and(const BasisIndex& a, const BasisIndex& b) {
    detail::check_same_n(a.n, b.n);
    return {a.value & b.value, a.n};
}
[[nodiscard]] inline BasisIndex bitwise_or(const BasisIndex& a, const BasisIndex& b) {
    detail::check_same_n(a.n, b.n);
    return {a.value | b.value, a.n};
}

inline BasisIndex operator^(const BasisIndex& a, const BasisIndex& b) { return bitwise_xor(a, b); }
inline BasisIndex operator&(const BasisIndex& a, const BasisIndex& b) { return bitwise_and(a, b); }
inline BasisIndex operator|(const BasisIndex& a, const BasisIndex& b) { return bitwise_or(a, b); }

/// The |A|-qubit label k_A made of the bits of k at the positions of A.
[[nodiscard]] inline BasisIndex extract(const BasisIndex& k, const QubitMask& a) {
    detail::check_same_n(k.n, a.n);
    const int na = a.size();
    if (na == 0) throw std::invalid_argument("extract: empty mask");
    return {extract_bits(k.value, a.bits), na};
}

/// The n-qubit label with the bits of l at the positions of A and zeros elsewhere.
[[nodiscard]] inline BasisIndex embed(const BasisIndex& l, const QubitMask& a) {
    if (l.n != a.size())
        throw std::invalid_argument("embed: label has " + std::to_string(l.n) +
                                    " qubits but mask selects " + std::to_string(a.size()));
    return {embed_bits(l.value, a.bits), a.n};
}

/// Overload for raw sub-labels; throws when l does not fit in |A| bits.
[[nodiscard]] inline BasisIndex embed(index_t l, const QubitMask& a) {
    if ((l & ~full_mask(a.size())) != 0)
        throw std::out_of_range("embed: label " + std::to_string(l) + " exceeds 2^|A|");
    return {embed_bits(l, a.bits), a.n};
}

/// All masks of popcount floor(n/2), ordered lexicographically by their qubit
/// labels ({1,2} < {1,3} < ... ), i.e. by descending mask value.
[[nodiscard]] inline std::vector<QubitMask> balanced_bipartitions(int n) {
    if (n < 2) throw std::invalid_argument("balanced_bipartitions requires n >= 2");
    detail::check_qubits(n, 63);
    const int half = n / 2;
    std::vector<QubitMask> out;
    const index_t limit = index_t{1} << n;
    for (index_t m = full_mask(half); m < limit; m = next_same_popcount(m)) out.emplace_back(m, n);
    std::reverse(out.begin(), out.end());
    return out;
}

/// Raw masks of the balanced bipartitions; same order as balanced_bipartitions.
[[nodiscard]] inline std::vector<index_t> balanced_masks(int n) {
    std::vector<index_t> out;
    for (const auto& m : balanced_bipartitions(n)) out.push_back(m.bits);
    return out;
}

// ============================================================================
// Exact combinatorics
// ============================================================================

/// C(n, k); zero whenever n < 0, k < 0 or k > n.
[[nodiscard]] inline BigInt binomial_int(long long n, long long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

[[nodiscard]] inline Rational binomial(long long n, long long k) { return Rational(binomial_int(n, k)); }

/// Multinomial n! / (s! t! (n-s-t)!); zero when any part is negative.
[[nodiscard]] inline BigInt multinomial(long long n, long long s, long long t) {
    if (n < 0 || s < 0 || t < 0 || s + t > n) return 0;
    return binomial_int(n, s) * binomial_int(n - s, t);
}

[[nodiscard]] inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

[[nodiscard]] inline std::string to_string(const Rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

[[nodiscard]] inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace mmes
