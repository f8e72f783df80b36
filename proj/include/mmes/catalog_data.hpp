// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

// Sign vectors of the real uniform catalog states, qubit-1-major order
// ('+' = +1, '-' = -1).  Transcribed by hand; catalog_self_test() checks them.

#pragma once

#include <string_view>

namespace mmes::catalog_data {

// n = 4, pi_ME = 1/3 (one of the 1056 real uniform minimizers; not perfect)
inline constexpr std::string_view kFourBest = "------++-+-++--+";

// n = 5, pi_ME = 1/4 (perfect)
inline constexpr std::string_view kFivePerfect =
    "+++++--+"
    "+--+++++"
    "++--+-+-"
    "-+-+--++";

// n = 6, pi_ME = 1/8 (perfect)
inline constexpr std::string_view kSixPerfect =
    "++-+---+"
    "--+----+"
    "-+---+++"
    "-+--+---"
    "+----+--"
    "+---+-++"
    "+++-++-+"
    "---+++-+";

// n = 3 real member of the three-qubit family, pi_ME = 1/2
inline constexpr std::string_view kThreeExample = "-++++++-";

}  // namespace mmes::catalog_data
