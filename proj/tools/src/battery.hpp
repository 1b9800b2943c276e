// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "lilygrow/builder.hpp"
#include "lilygrow/sampling.hpp"

namespace lily::cli {

struct InvariantTally {
    std::string name;
    /// Logged-only invariants never fail the battery.
    bool asserted = true;
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::string first_failure;
};

struct BatteryReport {
    std::vector<InvariantTally> invariants;
    std::size_t replicates = 0;
    std::size_t too_small = 0;
    std::size_t tie_degenerate = 0;
    std::size_t capped = 0;
    double max_R_difference = 0.0;
    double max_relative_penetration = 0.0;

    bool passed() const;
    InvariantTally& tally(const std::string& name);
    const InvariantTally* find(const std::string& name) const;
    void merge(const BatteryReport& other);
};

/// Faults the battery can plant in the builder output, for testing that
/// it notices. Empty means none.
inline constexpr const char* kFaultInflate = "inflate";

/// Every invariant on one configuration. The builder result is compared
/// to the event oracle unless the configuration is tie-degenerate.
BatteryReport check_configuration(const Configuration& config, const std::string& fault = {});

/// check_configuration over replicates 0..M-1 of the scenario.
BatteryReport run_battery(const ScenarioSpec& spec, std::size_t M, unsigned workers, const std::string& fault = {});

}  // namespace lily::cli
