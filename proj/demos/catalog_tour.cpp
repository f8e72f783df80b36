// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

// Prints pi_ME, the average linear entropy and the perfect-MMES verdict for
// every catalog state, plus GHZ(4) as a frustrated counterexample.

#include <cstdio>
#include <string>

#include "mmes.hpp"

int main() {
    auto show = [](const std::string& label, const mmes::PureState& s) {
        const auto table = mmes::build_coupling_table(s.n());
        const auto v = mmes::is_perfect_mmes(s);
        std::printf("%-14s n=%d  pi_ME=%.12f  L_ME=%.6f  perfect=%s  (purity gap %.2e)\n", label.c_str(), s.n(),
                    mmes::pi_me(s, table), mmes::avg_linear_entropy(s, table), v.is_perfect ? "yes" : "no",
                    v.worst_purity_gap);
    };
    for (const auto& name : mmes::catalog_names()) show(name, mmes::catalog(name));
    show("ghz(4)", mmes::ghz(4));
    return 0;
}
