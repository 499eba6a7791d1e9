// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

// Umbrella header for the whole library.

#pragma once

#include "darkcount/counting.hpp"
#include "darkcount/couplings.hpp"
#include "darkcount/darkspace.hpp"
#include "darkcount/errors.hpp"
#include "darkcount/io.hpp"
#include "darkcount/modp.hpp"
#include "darkcount/operators.hpp"
#include "darkcount/parallel.hpp"
#include "darkcount/protocol.hpp"
#include "darkcount/rng.hpp"
#include "darkcount/sector.hpp"
#include "darkcount/state.hpp"
#include "darkcount/trajectory.hpp"
