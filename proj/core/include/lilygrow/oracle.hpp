// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lilygrow/builder.hpp"

namespace lily {

struct OracleStats {
    std::size_t events_pushed = 0;
    std::size_t events_processed = 0;
    std::size_t stale_discarded = 0;
    /// Processed event times never decreased (beyond 1e-9 slack).
    bool monotone = true;
};

/// Physical growth simulation: grains are born, grow at unit rate and stop
/// at the first contact, processed in time order through a priority queue.
/// Independent of the round-based construction and used to check it.
HardCoreResult simulate_growth(const Configuration& config, OracleStats* stats = nullptr);

}  // namespace lily
