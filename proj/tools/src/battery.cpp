// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include "battery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lilygrow/analysis.hpp"
#include "lilygrow/errors.hpp"
#include "lilygrow/oracle.hpp"
#include "lilygrow/parallel.hpp"

namespace lily::cli {

namespace {

constexpr double kEquivalenceTolerance = 1e-6;

const char* const kNames[] = {"oracle-equivalence", "hard-core",     "earlier-neighbour-exists",
                              "earlier-neighbour-unique", "one-doublet-per-cluster", "stop-time-order",
                              "contact-sandwich",   "conservation"};

void note(InvariantTally& t, bool ok, const std::string& what)
{
    ++t.checked;
    if (ok)
        return;
    if (t.failed++ == 0)
        t.first_failure = what;
}

InvariantTally named(const std::string& name)
{
    InvariantTally t;
    t.name = name;
    return t;
}

BatteryReport empty_report()
{
    BatteryReport r;
    for (const char* name : kNames)
        r.invariants.push_back(named(name));
    return r;
}

}  // namespace

bool BatteryReport::passed() const
{
    return std::all_of(invariants.begin(), invariants.end(),
                       [](const InvariantTally& t) { return !t.asserted || t.failed == 0; });
}

InvariantTally& BatteryReport::tally(const std::string& name)
{
    for (auto& t : invariants)
        if (t.name == name)
            return t;
    invariants.push_back(named(name));
    return invariants.back();
}

const InvariantTally* BatteryReport::find(const std::string& name) const
{
    for (const auto& t : invariants)
        if (t.name == name)
            return &t;
    return nullptr;
}

void BatteryReport::merge(const BatteryReport& other)
{
    for (const auto& t : other.invariants) {
        InvariantTally& mine = tally(t.name);
        if (mine.failed == 0 && t.failed > 0)
            mine.first_failure = t.first_failure;
        mine.checked += t.checked;
        mine.failed += t.failed;
        mine.asserted = mine.asserted && t.asserted;
    }
    replicates += other.replicates;
    too_small += other.too_small;
    tie_degenerate += other.tie_degenerate;
    capped += other.capped;
    max_R_difference = std::max(max_R_difference, other.max_R_difference);
    max_relative_penetration = std::max(max_relative_penetration, other.max_relative_penetration);
}

BatteryReport check_configuration(const Configuration& config, const std::string& fault)
{
    BatteryReport report = empty_report();
    report.replicates = 1;
    if (config.grains.size() < 2) {
        report.too_small = 1;
        return report;
    }
    HardCoreResult result = build(config);
    if (fault == kFaultInflate) {
        for (GrownGrain& g : result.grains)
            if (g.status == GrainStatus::stopped) {
                g.R += 0.1;
                break;
            }
    } else if (!fault.empty()) {
        throw ConfigError("unknown fault '" + fault + "'");
    }
    const bool strictly_convex = !result.diagnostics.non_strictly_convex;
    const bool tie = result.membership == Membership::tie_degenerate;
    report.tie_degenerate = tie ? 1 : 0;
    report.capped = result.cap_radius ? 1 : 0;
    report.tally("earlier-neighbour-unique").asserted = strictly_convex;
    report.tally("stop-time-order").asserted = strictly_convex;

    auto label = [](GrainId a, GrainId b) {
        std::ostringstream s;
        s << "grains " << a << " and " << b;
        return s.str();
    };

    {
        std::size_t stopped = 0, covered = 0, capped = 0;
        for (const GrownGrain& g : result.grains) {
            stopped += g.status == GrainStatus::stopped;
            covered += g.status == GrainStatus::covered;
            capped += g.status == GrainStatus::capped;
        }
        note(report.tally("conservation"), stopped + covered + capped == config.grains.size() && capped <= 1,
             "status counts do not reconcile with the input");
    }

    if (!tie) {
        const HardCoreResult oracle = simulate_growth(config);
        double worst = 0.0;
        GrainId where = 0;
        for (std::size_t i = 0; i < result.grains.size(); ++i) {
            if (result.grains[i].status == GrainStatus::capped || oracle.grains[i].status == GrainStatus::capped) {
                if (result.grains[i].status != oracle.grains[i].status)
                    worst = kInfinity;
                continue;
            }
            const double diff = std::abs(result.grains[i].R - oracle.grains[i].R);
            if (diff > worst) {
                worst = diff;
                where = result.grains[i].grain.id;
            }
        }
        report.max_R_difference = worst;
        note(report.tally("oracle-equivalence"), worst <= kEquivalenceTolerance,
             "grain " + std::to_string(where) + " differs from the oracle by " + std::to_string(worst));
    }

    const HardCoreReport hc = verify_hard_core(result);
    report.max_relative_penetration = hc.max_relative_penetration;
    note(report.tally("hard-core"), hc.ok(),
         hc.ok() ? "" : "interiors overlap for " + label(hc.violating_pairs[0].first, hc.violating_pairs[0].second));

    for (const GrownGrain& g : result.grains) {
        if (g.status == GrainStatus::capped)
            continue;
        const auto witnesses = earlier_neighbours(result, g.grain.id);
        note(report.tally("earlier-neighbour-exists"), !witnesses.empty(),
             "grain " + std::to_string(g.grain.id) + " has no earlier neighbour");
        if (g.R > 0.0)
            note(report.tally("earlier-neighbour-unique"), witnesses.size() == 1,
                 "grain " + std::to_string(g.grain.id) + " has " + std::to_string(witnesses.size()) +
                     " earlier neighbours");
    }

    const NeighbourGraph graph = neighbour_graph(result);
    for (const Cluster& c : clusters(graph)) {
        if (c.touches_boundary)
            continue;
        note(report.tally("one-doublet-per-cluster"), c.doublet_count == 1,
             "cluster containing grain " + std::to_string(c.members.front()) + " has " +
                 std::to_string(c.doublet_count) + " doublets");
    }
    const auto order = stop_time_order_violations(graph);
    note(report.tally("stop-time-order"), order.empty(),
         order.empty() ? "" : "stop time does not increase from " + label(order[0].first, order[0].second));

    for (const auto& e : graph.edges) {
        const GrownGrain& u = result.find(graph.ids[e.a]);
        const GrownGrain& v = result.find(graph.ids[e.b]);
        const double d = first_contact_time(u.grain, v.grain);
        const double lo = std::min(u.stop_time(), v.stop_time());
        const double hi = std::max(u.stop_time(), v.stop_time());
        note(report.tally("contact-sandwich"), lo - 1e-8 <= d && d <= hi + 1e-8,
             "first contact outside the stop times of " + label(u.grain.id, v.grain.id));
    }
    return report;
}

BatteryReport run_battery(const ScenarioSpec& spec, std::size_t M, unsigned workers, const std::string& fault)
{
    if (!fault.empty() && fault != kFaultInflate)
        throw ConfigError("unknown fault '" + fault + "'");
    std::vector<BatteryReport> parts(M);
    parallel_for(M, workers, [&](std::size_t r) { parts[r] = check_configuration(sample(spec, r), fault); });
    BatteryReport total = empty_report();
    for (const auto& p : parts)
        total.merge(p);
    return total;
}

}  // namespace lily::cli
