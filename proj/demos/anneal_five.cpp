// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

// Anneals five-qubit real uniform states towards pi_ME = 1/4 and then runs the
// same schedule at negative beta, which drives the search to factorized states.

#include <cstdio>

#include "mmes.hpp"

int main() {
    const auto table = mmes::build_coupling_table(5);
    mmes::AnnealConfig cfg;
    cfg.schedule = mmes::parse_schedule("1:100,10:100,100:200,1000:100");
    cfg.replicas = 8;
    cfg.seed = 42;
    const auto low = mmes::anneal(5, cfg, table);
    std::printf("minimum found  %s = %.12f\n", mmes::to_string(*low.best_exact).c_str(), low.best_value);
    std::printf("best signs     %s\n", low.sample_minimizers.front().str().c_str());
    std::printf("perfect        %s\n",
                mmes::is_perfect_mmes(mmes::uniform_from_signs(low.sample_minimizers.front())).is_perfect ? "yes"
                                                                                                            : "no");

    for (auto& step : cfg.schedule) step.beta = -step.beta;
    const auto high = mmes::anneal(5, cfg, table);
    std::printf("maximum found  %.12f\n", high.best_value);
    return 0;
}
