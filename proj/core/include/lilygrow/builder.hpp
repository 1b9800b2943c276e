// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lilygrow/model.hpp"

namespace lily {

/// Whether the finite construction produced a genuine growth-maximal
/// hard-core model.
enum class Membership {
    in_h,                  ///< every grain was resolved by the construction
    leftover_unstoppable,  ///< one grain had no positive stopper and was capped
    tie_degenerate,        ///< coinciding contact times were broken by id order
};

const char* to_string(Membership m);

/// What fixed a grain's growth time.
enum class Rule {
    doublet,      ///< mutual nearest pair meeting at d(u, v)
    coverage,     ///< germ reached before its birth inside a mutual pair
    frozen_stop,  ///< stopped by an already frozen positive grain
    pair_meet,    ///< oracle: two growing grains touched
    hit_frozen,   ///< oracle: touched a frozen grain
    cover_germ,   ///< oracle: germ reached before its birth
    leftover,     ///< single remaining grain stopped by a frozen grain
    cap,          ///< single remaining grain with nothing to stop it
};

const char* to_string(Rule r);

struct LogEntry {
    int round = 0;
    Rule rule = Rule::doublet;
    GrainId subject = 0;
    double time = 0.0;
};

struct HardCoreResult {
    std::string engine = "builder";
    /// One entry per input grain, in input order.
    std::vector<GrownGrain> grains;
    Membership membership = Membership::in_h;
    std::optional<double> cap_radius;
    Diagnostics diagnostics;
    std::vector<LogEntry> log;
    Box window;
    int dimension = 2;

    std::size_t index_of(GrainId id) const;
    const GrownGrain& find(GrainId id) const;
};

struct MutualPair {
    GrainId first = 0;   ///< smaller id
    GrainId second = 0;
    double time = 0.0;   ///< d(first, second)
};

/// All mutual nearest pairs of `active` with respect to d, ordered by
/// (d, smaller id, larger id). Nearest neighbours break equal d by id.
/// Sets *tie when two candidate distances coincide within 1e-12.
std::vector<MutualPair> mutual_nearest_pairs(std::span<const Grain> active, bool* tie = nullptr);

/// Frozen and active grains between construction rounds.
struct RoundState {
    std::vector<GrownGrain> frozen;
    std::vector<Grain> active;
    int round = 0;
    std::vector<LogEntry> log;
};

/// Earliest time u touches a frozen grain with R > 0; kInfinity if none.
double nearest_frozen_time(const Grain& u, const RoundState& state);

/// Deterministic round-based construction of the growth-maximal hard-core
/// growth times. Throws InvalidConfiguration for fewer than two grains or
/// invalid data.
HardCoreResult build(const Configuration& config);

}  // namespace lily
