// Copyright 2026 The mmes Authors
// SPDX-License-Identifier: Apache-2.0

// Umbrella header.

#pragma once

#include "mmes/bitspace.hpp"
#include "mmes/states.hpp"
#include "mmes/bipartite.hpp"
#include "mmes/potential.hpp"
#include "mmes/perfect.hpp"
#include "mmes/search.hpp"
