// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "mmes.hpp"
#include "oracles.hpp"

using namespace mmes;

namespace {
QubitMask q(int n, std::initializer_list<int> labels) { return QubitMask::from_qubits(n, labels); }
}  // namespace

TEST(ReducedDensityMatrix, Examples) {
    const auto bell = reduced_density_matrix(ghz(2), q(2, {1})).rho;
    EXPECT_LE((bell - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);

    const auto prod = reduced_density_matrix(basis_state(2, 0), q(2, {1})).rho;
    EXPECT_EQ(prod(0, 0), Amplitude(1.0));
    EXPECT_EQ(prod(1, 1), Amplitude(0.0));

    const auto g = reduced_density_matrix(ghz(3), q(3, {1, 2})).rho;
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(4, 4);
    want(0, 0) = want(3, 3) = 0.5;
    EXPECT_LE((g - want).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW((void)reduced_density_matrix(ghz(3), QubitMask(0, 3)), std::invalid_argument);
    EXPECT_THROW((void)reduced_density_matrix(ghz(3), QubitMask(7, 3)), std::invalid_argument);
}

TEST(ReducedDensityMatrix, IsValidDensityMatrix) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = random_state(5, seed);
        EXPECT_NO_THROW(reduced_density_matrix(s, q(5, {2, 4})).validate());
    }
    DensityMatrix bad{Eigen::MatrixXcd::Identity(2, 2)};
    EXPECT_THROW(bad.validate(), std::domain_error);
}

TEST(Purity, Examples) {
    EXPECT_NEAR(purity_form1(ghz(2), q(2, {1})), 0.5, 1e-15);
    EXPECT_NEAR(purity_form1(basis_state(2, 0), q(2, {1})), 1.0, 1e-15);
    EXPECT_NEAR(purity_form1(ghz(4), q(4, {1, 2})), 0.5, 1e-15);
    EXPECT_NEAR(purity_form2(ghz(2), q(2, {1})), 0.5, 1e-15);
    const std::vector<std::array<Amplitude, 2>> pairs{
        {Amplitude(0.6), Amplitude(0.0, 0.8)}, {Amplitude(1.0), Amplitude(0.0)},
        {Amplitude(std::sqrt(0.5)), Amplitude(-std::sqrt(0.5))}, {Amplitude(0.28), Amplitude(0.96)}};
    const auto f = fully_factorized(pairs);
    for (index_t a = 1; a < 15; ++a) EXPECT_NEAR(purity_form2(f, QubitMask(a, 4)), 1.0, 1e-12);
}

TEST(Purity, FormsAgreeWithOracleAndSpectrum) {
    for (int n = 2; n <= 6; ++n)
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto s = random_state(n, 1000 * n + seed);
            const index_t a = 1 + seed % (full_mask(n) - 1);
            const QubitMask mask(a, n);
            const double p1 = purity_form1(s, mask);
            const double p2 = purity_form2(s, mask);
            const auto spec = schmidt_spectrum(s, mask);
            double lam2 = 0.0;
            for (double v : spec.values) lam2 += v * v;
            for (double v : spec.zeros) lam2 += v * v;
            EXPECT_NEAR(p1, p2, 1e-12);
            EXPECT_NEAR(p1, lam2, 1e-11);
            if (seed < 10) EXPECT_NEAR(p2, oracle::purity(oracle::amps(s), n, mask.qubits()), 1e-12);
        }
}

TEST(Purity, BoundsAndComplementSymmetry) {
    for (int n = 2; n <= 8; ++n)
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto s = random_state(n, 77 + seed);
            for (index_t a = 1; a < full_mask(n); a += 3) {
                const QubitMask mask(a, n);
                const double p = purity(s, mask);
                const double pc = purity(s, mask.complement());
                const int na = std::min(mask.size(), n - mask.size());
                EXPECT_NEAR(p, pc, 1e-12);
                EXPECT_GE(p, std::ldexp(1.0, -na) - 1e-12);
                EXPECT_LE(p, 1.0 + 1e-12);
            }
        }
}

TEST(Schmidt, Examples) {
    const auto bell = schmidt_spectrum(ghz(2), q(2, {1}));
    ASSERT_EQ(bell.values.size(), 2u);
    EXPECT_NEAR(bell.values[0], 0.5, 1e-15);
    EXPECT_NEAR(bell.values[1], 0.5, 1e-15);
    const auto prod = schmidt_spectrum(basis_state(3, 5), q(3, {1}));
    ASSERT_EQ(prod.values.size(), 1u);
    EXPECT_NEAR(prod.values[0], 1.0, 1e-15);
    EXPECT_EQ(prod.zeros.size(), 1u);

    const auto s = random_state(4, 9);
    const auto a = schmidt_spectrum(s, q(4, {1, 3}));
    const auto b = schmidt_spectrum(s, q(4, {2, 4}));
    ASSERT_EQ(a.values.size(), b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-10);
    EXPECT_NEAR(a.sum(), 1.0, 1e-10);
    EXPECT_TRUE(std::is_sorted(a.values.rbegin(), a.values.rend()));
}

TEST(Measures, Examples) {
    EXPECT_NEAR(entanglement_E(basis_state(2, 1), q(2, {1})), 0.0, 1e-12);
    EXPECT_NEAR(entanglement_E(ghz(2), q(2, {1})), 1.0, 1e-12);
    EXPECT_NEAR(entanglement_E(ghz(3), q(3, {1, 2})), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(entanglement_E(ghz(3), q(3, {3})), 1.0, 1e-12);
    EXPECT_NEAR(linear_entropy_L(basis_state(2, 1), q(2, {1})), 0.0, 1e-12);
    EXPECT_NEAR(linear_entropy_L(ghz(2), q(2, {1})), 1.0, 1e-12);
    EXPECT_NEAR(linear_entropy_L(ghz(4), q(4, {1, 2})), 2.0 / 3.0, 1e-12);
}

TEST(TermCounts, Examples) {
    const auto a = bipartite_term_counts(2, 1);
    EXPECT_EQ(a.n1, 4);
    EXPECT_EQ(a.n2, 8);
    EXPECT_EQ(a.n4, 4);
    const auto b = bipartite_term_counts(4, 2);
    EXPECT_EQ(b.n1, 16);
    EXPECT_EQ(b.n2, 96);
    EXPECT_EQ(b.n4, 144);
    const auto c = bipartite_term_counts(3, 1);
    EXPECT_EQ(c.n1, 8);
    EXPECT_EQ(c.n2, 32);
    EXPECT_EQ(c.n4, 24);
    for (int n = 2; n <= 20; ++n)
        for (int na = 1; na < n; ++na) {
            const auto t = bipartite_term_counts(n, na);
            EXPECT_EQ(t.n1 + t.n2 + t.n4, pow2(2 * n));
        }
    EXPECT_THROW((void)bipartite_term_counts(4, 0), std::out_of_range);
    EXPECT_THROW((void)bipartite_term_counts(4, 4), std::out_of_range);
}

TEST(PurityUniform, Examples) {
    const auto ones = polar(uniform_from_signs(SignVector::all_plus(2)));
    EXPECT_NEAR(purity_uniform(ones, q(2, {1})), 1.0, 1e-15);
    const auto bell = polar(uniform_from_signs(SignVector::parse("+++-")));
    EXPECT_NEAR(purity_uniform(bell, q(2, {1})), 0.5, 1e-15);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = random_phases(4, seed);
        EXPECT_NEAR(purity_uniform(p, q(4, {1, 2})), purity_form2(assemble(p), q(4, {1, 2})), 1e-12);
    }
    EXPECT_THROW((void)purity_uniform(polar(ghz(2)), q(2, {1})), std::invalid_argument);
}

TEST(Invariance, LocalUnitariesAndPermutations) {
    std::mt19937_64 rng(17);
    for (int n = 2; n <= 6; ++n)
        for (int rep = 0; rep < 5; ++rep) {
            const auto s = random_state(n, 400 + rep);
            const int qubit = 1 + rep % n;
            const Eigen::Matrix2cd u = random_unitary(2, rng);
            const auto t = apply_single_qubit(s, qubit, u);
            for (index_t a = 1; a < full_mask(n); ++a)
                EXPECT_NEAR(purity(s, QubitMask(a, n)), purity(t, QubitMask(a, n)), 1e-11);

            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 1);
            std::shuffle(perm.begin(), perm.end(), rng);
            const auto p = permute_qubits(s, perm);
            for (index_t a = 1; a < full_mask(n); ++a) {
                const QubitMask mask(a, n);
                std::vector<int> image;
                for (int qq : mask.qubits()) image.push_back(perm[qq - 1]);
                EXPECT_NEAR(purity(s, mask), purity(p, QubitMask::from_qubits(n, image)), 1e-12);
            }
        }
}

TEST(SmallerSubsystems, MaximalEntanglementIsInherited) {
    for (const auto& name : catalog_names()) {
        const auto s = catalog(name);
        const int n = s.n();
        for (const auto& a : balanced_bipartitions(n)) {
            if (std::abs(purity(s, a) - std::ldexp(1.0, -a.size())) > 1e-10) continue;
            for (index_t b = (a.bits - 1) & a.bits; b != 0; b = (b - 1) & a.bits)
                EXPECT_NEAR(purity(s, QubitMask(b, n)), std::ldexp(1.0, -popcount(b)), 1e-9);
        }
    }
}
