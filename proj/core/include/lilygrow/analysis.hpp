// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lilygrow/builder.hpp"
#include "lilygrow/sampling.hpp"

namespace lily {

/// Two grown bodies touch when their separation is at most this fraction
/// of the larger grown circumradius.
inline constexpr double kTouchTolerance = 1e-7;
/// Slack on stop-time comparisons.
inline constexpr double kStopTimeTolerance = 1e-8;

using GrainPair = std::pair<GrainId, GrainId>;

struct HardCoreReport {
    double max_penetration = 0.0;
    /// Penetration divided by the larger grown circumradius of the pair.
    double max_relative_penetration = 0.0;
    std::vector<GrainPair> violating_pairs;
    std::size_t pairs_checked = 0;

    bool ok() const { return violating_pairs.empty(); }
};

/// Pairwise interior-overlap test over grains with R > 0. Capped grains are
/// skipped. A pair violates when its relative penetration exceeds
/// `relative_tolerance`.
HardCoreReport verify_hard_core(const HardCoreResult& result, double relative_tolerance = kTouchTolerance);

bool touching(const GrownGrain& a, const GrownGrain& b);

/// Witnesses for the growth time of `id`. For R > 0: touching positive
/// grains that stopped no later. For R = 0: positive grains containing the
/// germ that reached it by its birth. Throws InvalidArgument for unknown ids.
std::vector<GrainId> earlier_neighbours(const HardCoreResult& result, GrainId id);

/// Touching graph on the non-capped grains with R > 0.
struct NeighbourGraph {
    struct Edge {
        std::size_t a = 0;  ///< vertex indices
        std::size_t b = 0;
        bool doublet = false;
    };

    std::vector<GrainId> ids;
    std::vector<double> stop_times;
    /// Body reaches or crosses the window boundary.
    std::vector<char> on_boundary;
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> adjacency;  ///< edge indices per vertex

    std::size_t size() const { return ids.size(); }
};

NeighbourGraph neighbour_graph(const HardCoreResult& result);

struct Cluster {
    int id = 0;
    std::vector<GrainId> members;
    int doublet_count = 0;
    bool touches_boundary = false;

    std::size_t size() const { return members.size(); }
    bool has_doublet() const { return doublet_count > 0; }
};

/// Connected components, ordered by smallest member id.
std::vector<Cluster> clusters(const NeighbourGraph& graph);

/// Touching pairs with equal stop times, smaller id first, sorted.
std::vector<GrainPair> doublets(const HardCoreResult& result);
std::vector<GrainPair> doublets(const NeighbourGraph& graph);

/// Edges (parent, child) of breadth-first trees grown from every doublet
/// along which the stop time fails to increase strictly.
std::vector<GrainPair> stop_time_order_violations(const NeighbourGraph& graph);

/// Throws InvalidRegime unless every birth is 0 and B^d within K within c B^d.
void check_regime(const Configuration& config, double c);

struct StabilizationRecord {
    struct Ball {
        Vec center;
        double radius = 0.0;
    };
    struct Endpoint {
        GrainId id = 0;
        /// Largest final step over all descending chains ending here.
        double r = 0.0;
    };

    GrainId id = 0;
    Vec y;
    double c = 1.0;
    /// Smallest gauge distance from y to another germ.
    double D = kInfinity;
    std::vector<Endpoint> endpoints;
    /// B(y, 2cD) followed by B(x, 2cr) per endpoint.
    std::vector<Ball> S;
    double U = kInfinity;
    bool truncated = false;
    std::size_t work = 0;

    bool finite() const { return U < kInfinity && !truncated; }
};

inline constexpr std::size_t kDefaultChainBudget = 100000;

/// Stabilization radius of the grain `id`. Descending-chain endpoints are
/// found by widest-path propagation, which visits each grain once; the
/// budget caps the number of first-contact evaluations, and exhausting it
/// sets `truncated` and U = infinity. Throws InvalidRegime outside the
/// zero-birth regime with constant c.
StabilizationRecord stabilization(const Configuration& config, GrainId id, double c,
                                  std::size_t chain_budget = kDefaultChainBudget);

struct SpotCheckReport {
    bool passed = true;
    int trials = 0;
    double max_change = 0.0;
    /// Insertions just inside D that changed R(y). Diagnostic only.
    int control_changes = 0;
};

/// Inserts random grains strictly outside B(y, U) and checks that R(y) is
/// unchanged within 1e-9, both for the full configuration and for its
/// restriction to B(y, U). Requires a finite record.
SpotCheckReport stabilization_spot_check(const Configuration& config, GrainId id, const StabilizationRecord& record,
                                         int trials, std::uint64_t seed);

struct TailPoint {
    double t = 0.0;
    double tail = 0.0;
    double standard_error = 0.0;
};

struct TailCurve {
    std::vector<TailPoint> points;
    std::size_t replicates = 0;
    std::size_t truncated = 0;
    /// Least-squares slope of log tail against t over the positive part.
    double log_slope = 0.0;

    bool nonincreasing() const;
};

/// Empirical P(U > t) at the grain nearest the window center.
TailCurve tail_curve_U(const ScenarioSpec& spec, std::size_t replicates, std::span<const double> thresholds,
                       std::size_t chain_budget = kDefaultChainBudget);

}  // namespace lily
