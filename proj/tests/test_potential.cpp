// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "mmes.hpp"
#include "oracles.hpp"

using namespace mmes;

namespace {
BasisIndex bi(index_t v, int n) { return {v, n}; }

Rational ghat_oracle(int s, int t, int n, int na) {
    return (oracle::binom(n - s - t, na - s) + oracle::binom(n - s - t, na - t)) / (2 * oracle::binom(n, na));
}
}  // namespace

TEST(GHat, Examples) {
    for (int n = 2; n <= 10; ++n)
        for (int na = 1; na < n; ++na) EXPECT_EQ(g_hat(0, 0, n, na), Rational(1));
    EXPECT_EQ(g_hat(1, 1, 3, 1), Rational(1, 3));
    EXPECT_EQ(g_hat(1, 2, 3, 1), Rational(1, 6));
    EXPECT_EQ(g_hat(1, 1, 2, 1), Rational(1, 2));
    EXPECT_THROW((void)g_hat(0, 0, 4, 0), std::out_of_range);
    EXPECT_THROW((void)g_hat(0, 0, 4, 4), std::out_of_range);
    EXPECT_THROW((void)g_hat(-1, 0, 4, 2), std::invalid_argument);
}

TEST(GHat, DualFormAndOracleAgreeExactly) {
    for (int n = 2; n <= 10; ++n)
        for (int na = 1; na < n; ++na)
            for (int s = 0; s <= n; ++s)
                for (int t = 0; t <= n; ++t) {
                    ASSERT_EQ(g_hat(s, t, n, na), g_hat_multinomial(s, t, n, na)) << n << ' ' << na << ' ' << s << ' ' << t;
                    ASSERT_EQ(g_hat(s, t, n, na), ghat_oracle(s, t, n, na));
                }
}

TEST(G, VanishesOnOverlap) {
    EXPECT_EQ(g(bi(0b011, 3), bi(0b010, 3), 1), Rational(0));
    EXPECT_EQ(g(bi(0b001, 3), bi(0b010, 3), 1), Rational(1, 3));
    EXPECT_EQ(g(bi(0, 4), bi(0, 4), 2), Rational(1));
}

TEST(CouplingDelta, TrivialDiagonal) {
    for (index_t k = 0; k < 16; ++k) EXPECT_EQ(coupling_delta(bi(k, 4), bi(k, 4), bi(k, 4), bi(k, 4), 2), Rational(1));
}

TEST(CouplingDelta, MatchesBipartitionAverage) {
    std::mt19937_64 rng(2024);
    for (int n = 2; n <= 6; ++n)
        for (int na = 1; na < n; ++na) {
            const int samples = n == 4 && na == 2 ? 10000 : 300;
            std::uniform_int_distribution<index_t> label(0, full_mask(n));
            for (int i = 0; i < samples; ++i) {
                const index_t k = label(rng), kp = label(rng), l = label(rng), lp = label(rng);
                ASSERT_EQ(coupling_delta(bi(k, n), bi(kp, n), bi(l, n), bi(lp, n), na), oracle::delta(k, kp, l, lp, n, na));
            }
        }
    // exhaustive for n = 2
    for (index_t x = 0; x < 256; ++x) {
        const index_t k = x & 3, kp = (x >> 2) & 3, l = (x >> 4) & 3, lp = x >> 6;
        ASSERT_EQ(coupling_delta(bi(k, 2), bi(kp, 2), bi(l, 2), bi(lp, 2), 1), oracle::delta(k, kp, l, lp, 2, 1));
    }
}

TEST(CouplingDelta, Symmetries) {
    auto check = [](index_t k, index_t kp, index_t l, index_t lp, int n, int na) {
        const auto d = coupling_delta(bi(k, n), bi(kp, n), bi(l, n), bi(lp, n), na);
        ASSERT_EQ(d, coupling_delta(bi(kp, n), bi(k, n), bi(l, n), bi(lp, n), na));
        ASSERT_EQ(d, coupling_delta(bi(l, n), bi(lp, n), bi(k, n), bi(kp, n), na));
    };
    for (int n = 2; n <= 3; ++n)
        for (int na = 1; na < n; ++na)
            for (index_t x = 0; x < (index_t{1} << (4 * n)); ++x) {
                const index_t m = full_mask(n);
                check(x & m, (x >> n) & m, (x >> (2 * n)) & m, x >> (3 * n), n, na);
            }
    std::mt19937_64 rng(7);
    for (int n = 4; n <= 6; ++n) {
        std::uniform_int_distribution<index_t> label(0, full_mask(n));
        for (int i = 0; i < 100000; ++i) check(label(rng), label(rng), label(rng), label(rng), n, n / 2);
    }
}

TEST(AdmissibleQ, Examples) {
    EXPECT_EQ(admissible_q(bi(5, 3), bi(5, 3), bi(5, 3), bi(5, 3)).value, 0u);
    EXPECT_EQ(admissible_q(bi(5, 3), bi(2, 3), bi(5, 3), bi(2, 3)).value, 0u);
}

TEST(AdmissibleQ, KernelEqualsSetDefinition) {
    for (int n = 2; n <= 3; ++n) {
        std::uint64_t members = 0;
        for (index_t x = 0; x < (index_t{1} << (4 * n)); ++x) {
            const index_t m = full_mask(n);
            const index_t k = x & m, kp = (x >> n) & m, l = (x >> (2 * n)) & m, lp = x >> (3 * n);
            const bool kernel = admissible_q(bi(k, n), bi(kp, n), bi(l, n), bi(lp, n)).value == 0;
            ASSERT_EQ(kernel, oracle::admissible(k, kp, l, lp, n));
            members += kernel;
        }
        // each qubit independently: 6 of its 16 bit patterns are admissible
        std::uint64_t expected = 1;
        for (int i = 0; i < n; ++i) expected *= 6;
        EXPECT_EQ(members, expected);
    }
}

TEST(CouplingTable, TwoQubits) {
    const auto t = build_coupling_table(2);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t.entries()[0].l, 0b01u);
    EXPECT_EQ(t.entries()[0].m, 0b10u);
    EXPECT_EQ(t.weight(t.entries()[0]), Rational(1, 2));
    EXPECT_EQ(t.entries()[1].l, 0b10u);
    EXPECT_EQ(t.entries()[1].m, 0b01u);
    EXPECT_EQ(t.weight(t.entries()[1]), Rational(1, 2));
    EXPECT_EQ(t.constant(), Rational(3, 4));
}

TEST(CouplingTable, EntriesAndCounts) {
    EXPECT_EQ(build_coupling_table(4).size(), 42u);
    for (int n = 2; n <= 10; ++n) {
        const auto t = build_coupling_table(n);
        EXPECT_EQ(BigInt(t.size()), coupling_entry_count(n));
        EXPECT_EQ(BigInt(t.size()) * pow2(n), 8 * monomial_counts(n).n4);
        index_t prev_l = 0, prev_m = 0;
        for (const auto& e : t.entries()) {
            ASSERT_NE(e.l, 0u);
            ASSERT_NE(e.m, 0u);
            ASSERT_EQ(e.l & e.m, 0u);
            ASSERT_NE(t.weight(e), 0);
            ASSERT_EQ(t.weight(e), g(bi(e.l, n), bi(e.m, n), n / 2));
            ASSERT_TRUE(e.l > prev_l || (e.l == prev_l && e.m > prev_m));
            prev_l = e.l;
            prev_m = e.m;
        }
    }
    EXPECT_THROW((void)build_coupling_table(1), std::out_of_range);
    EXPECT_THROW((void)build_coupling_table(25), std::out_of_range);
}

TEST(Normalization, RowSumsAreExactlyOne) {
    for (int n = 2; n <= 8; ++n)
        for (int na = 1; na < n; ++na) {
            const GHatGrid grid(n, na);
            for (index_t l = 0; l <= full_mask(n); ++l) ASSERT_EQ(normalization_row_sum(l, grid), Rational(1));
        }
}

TEST(MonomialCounts, TableRows) {
    const std::vector<std::array<long, 3>> rows{{4, 4, 1},         {8, 24, 12},        {16, 80, 84},
                                                {32, 400, 680},    {64, 1312, 4000},   {128, 6272, 28672},
                                                {256, 20736, 162624}};
    for (int n = 2; n <= 8; ++n) {
        const auto c = monomial_counts(n);
        EXPECT_EQ(c.n1, rows[n - 2][0]);
        EXPECT_EQ(c.n2, rows[n - 2][1]);
        EXPECT_EQ(c.n4, rows[n - 2][2]);
    }
    EXPECT_THROW((void)monomial_counts(1), std::invalid_argument);
    EXPECT_NO_THROW((void)monomial_counts(64));
}

TEST(MonomialCounts, MatchDistinctTermEnumeration) {
    for (int n = 2; n <= 5; ++n) {
        const int na = n / 2;
        const auto brute = oracle::count_monomials(n, [&](index_t l, index_t m) {
            if (l & m) return Rational(0);
            return ghat_oracle(std::popcount(l), std::popcount(m), n, na);
        });
        const auto c = monomial_counts(n);
        EXPECT_EQ(c.n1, brute.n1);
        EXPECT_EQ(c.n2, brute.n2);
        EXPECT_EQ(c.n4, brute.n4);
    }
}

TEST(MonomialCounts, SplittingAccounting) {
    for (int n = 2; n <= 16; ++n) {
        const GHatGrid grid(n, n / 2);
        BigInt nonzero = 0;
        for (int w = 1; w <= n; ++w)
            if (grid(w, 0) != 0) nonzero += binomial_int(n, w);
        EXPECT_EQ(monomial_counts(n).n2, pow2(n + 1) * nonzero / 4) << n;
    }
}

TEST(PiMe, Form1Examples) {
    for (int n = 2; n <= 8; ++n) EXPECT_NEAR(pi_me_form1(basis_state(n, 0)), 1.0, 1e-15);
    EXPECT_NEAR(pi_me_form1(ghz(3)), 0.5, 1e-15);
    EXPECT_NEAR(pi_me_form1(uniform_from_signs(catalog_signs("four_best"))), 1.0 / 3.0, 1e-12);
}

TEST(PiMe, Form2Examples) {
    const auto s = random_state(3, 11);
    EXPECT_NEAR(pi_me_form2(s, build_coupling_table(3)), pi_me_form1(s), 1e-12);
    EXPECT_NEAR(pi_me_form2(uniform_from_signs(SignVector::parse("+++-")), build_coupling_table(2)), 0.5, 1e-15);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
    std::vector<std::array<Amplitude, 2>> pairs;
    for (int q = 0; q < 5; ++q) {
        const double th = ang(rng) / 2;
        pairs.push_back({std::polar(std::cos(th), ang(rng)), std::polar(std::sin(th), ang(rng))});
    }
    EXPECT_NEAR(pi_me_form2(fully_factorized(pairs), build_coupling_table(5)), 1.0, 1e-12);
    EXPECT_THROW((void)pi_me_form2(s, build_coupling_table(4)), std::invalid_argument);
}

TEST(PiMe, Form4Examples) {
    const auto t3 = build_coupling_table(3);
    EXPECT_NEAR(entanglement_deficit(basis_state(3, 6), t3), 0.0, 1e-15);
    EXPECT_NEAR(pi_me_form4(basis_state(3, 6), t3), 1.0, 1e-15);
    EXPECT_NEAR(pi_me_form4(ghz(3), t3), 0.5, 1e-15);
    const auto s = random_state(2, 5);
    const double direct = 1.0 - 2.0 * std::norm(s[0] * s[3] - s[1] * s[2]);
    EXPECT_NEAR(pi_me_form4(s, build_coupling_table(2)), direct, 1e-15);
    EXPECT_NEAR(pi_me_form4(ghz(2), build_coupling_table(2)), 0.5, 1e-15);
}

TEST(PiMe, FormsAgreeWithOracle) {
    for (int n = 2; n <= 8; ++n) {
        const auto table = build_coupling_table(n);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto s = random_state(n, 9000 + 31 * n + seed);
            const double f1 = pi_me_form1(s);
            EXPECT_NEAR(pi_me_form2(s, table), f1, 1e-12);
            EXPECT_NEAR(pi_me_form4(s, table), f1, 1e-12);
            EXPECT_GE(entanglement_deficit(s, table), 0.0);
            EXPECT_GE(f1, std::ldexp(1.0, -(n / 2)) - 1e-12);
            EXPECT_LE(f1, 1.0 + 1e-12);
            if (n <= 5 && seed < 3) EXPECT_NEAR(f1, oracle::pi_me(oracle::amps(s), n), 1e-12);
        }
    }
}

TEST(PiMe, ThreadCountDoesNotChangeResult) {
    const auto table = build_coupling_table(7);
    const auto s = random_state(7, 1);
    const double one = pi_me_form2(s, table, 1);
    EXPECT_EQ(one, pi_me_form2(s, table, 3));
    EXPECT_EQ(one, pi_me_form2(s, table, 8));
    EXPECT_EQ(pi_me_form1(s, 1), pi_me_form1(s, 4));
}

TEST(PiMeUniform, TwoQubitClosedForm) {
    const auto table = build_coupling_table(2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = random_phases(2, seed);
        const auto& z = p.phases;
        const double want = 0.75 + 0.25 * (z[0] * z[3] * std::conj(z[1]) * std::conj(z[2])).real();
        EXPECT_NEAR(pi_me_uniform(z, table), want, 1e-15);
    }
}

TEST(PiMeUniform, CatalogAndCrossCheck) {
    EXPECT_NEAR(pi_me_uniform(catalog_signs("five_perfect"), build_coupling_table(5)), 0.25, 1e-12);
    EXPECT_NEAR(pi_me_uniform(catalog_signs("six_perfect"), build_coupling_table(6)), 0.125, 1e-12);
    for (int n = 2; n <= 7; ++n) {
        const auto table = build_coupling_table(n);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto p = random_phases(n, seed);
            EXPECT_NEAR(pi_me_uniform(p.phases, table), pi_me_form2(assemble(p), table), 1e-12);
        }
    }
    EXPECT_THROW((void)pi_me_uniform(SignVector::all_plus(3), build_coupling_table(4)), std::invalid_argument);
}

TEST(AvgLinearEntropy, Examples) {
    EXPECT_NEAR(avg_linear_entropy(basis_state(4, 3), build_coupling_table(4)), 0.0, 1e-15);
    EXPECT_NEAR(avg_linear_entropy(ghz(3), build_coupling_table(3)), 1.0, 1e-15);
    EXPECT_NEAR(avg_linear_entropy(uniform_from_signs(catalog_signs("four_best")), build_coupling_table(4)), 8.0 / 9.0,
                1e-12);
}

TEST(Invariance, PotentialUnderLocalOperations) {
    std::mt19937_64 rng(99);
    for (int n = 2; n <= 6; ++n) {
        const auto table = build_coupling_table(n);
        for (int rep = 0; rep < 10; ++rep) {
            auto s = random_state(n, 50 * n + rep);
            const double before = pi_me_form2(s, table);
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 1);
            std::shuffle(perm.begin(), perm.end(), rng);
            s = permute_qubits(s, perm);
            for (int qb = 1; qb <= n; ++qb) s = apply_single_qubit(s, qb, random_unitary(2, rng));
            EXPECT_NEAR(pi_me_form2(s, table), before, 1e-11);
        }
    }
}
