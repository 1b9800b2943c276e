// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include "lilygrow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <queue>

#include "lilygrow/errors.hpp"
#include "lilygrow/rng.hpp"
#include "spatial_grid.hpp"

namespace lily {

namespace {

double grown_radius(const GrownGrain& g)
{
    return g.R * g.grain.shape.circumradius();
}

bool positive(const GrownGrain& g)
{
    return g.R > 0.0 && g.status != GrainStatus::capped;
}

/// Calls f(i, j) for every pair i < j of selected grains whose bounding
/// balls overlap or come within the touch tolerance.
template <class F>
void for_each_close_pair(const HardCoreResult& result, const std::vector<std::size_t>& selected, F&& f)
{
    if (selected.size() < 2)
        return;
    std::vector<Vec> centers;
    double widest = 0.0;
    for (std::size_t i : selected) {
        centers.push_back(result.grains[i].grain.x);
        widest = std::max(widest, grown_radius(result.grains[i]));
    }
    detail::SpatialGrid grid(centers, result.dimension);
    for (std::size_t a = 0; a < selected.size(); ++a) {
        const GrownGrain& u = result.grains[selected[a]];
        const double ru = grown_radius(u);
        const double reach = ru + widest + 2.0 * kTouchTolerance * std::max(ru, widest);
        grid.for_each_within(u.grain.x, reach, [&](std::size_t b) {
            if (b <= a)
                return;
            const GrownGrain& v = result.grains[selected[b]];
            const double rv = grown_radius(v);
            const double slack = kTouchTolerance * std::max(ru, rv);
            if (norm(u.grain.x - v.grain.x) <= ru + rv + slack)
                f(selected[a], selected[b]);
        });
    }
}

bool body_on_boundary(const GrownGrain& g, const Box& window, int dimension)
{
    for (int k = 0; k < dimension; ++k) {
        Vec e{};
        e[k] = 1.0;
        const double hi = g.grain.x[k] + g.R * g.grain.shape.support(e);
        const double lo = g.grain.x[k] - g.R * g.grain.shape.support(-1.0 * e);
        if (lo <= window.lo[k] || hi >= window.hi[k])
            return true;
    }
    return false;
}

GrainPair ordered(GrainId a, GrainId b)
{
    return a < b ? GrainPair{a, b} : GrainPair{b, a};
}

}  // namespace

HardCoreReport verify_hard_core(const HardCoreResult& result, double relative_tolerance)
{
    HardCoreReport report;
    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < result.grains.size(); ++i)
        if (positive(result.grains[i]))
            selected.push_back(i);
    for_each_close_pair(result, selected, [&](std::size_t i, std::size_t j) {
        const GrownGrain& u = result.grains[i];
        const GrownGrain& v = result.grains[j];
        ++report.pairs_checked;
        if (separation(u.body(), v.body()).distance > 0.0)
            return;
        const double depth = penetration_depth(u.body(), v.body());
        const double relative = depth / std::max(grown_radius(u), grown_radius(v));
        report.max_penetration = std::max(report.max_penetration, depth);
        report.max_relative_penetration = std::max(report.max_relative_penetration, relative);
        if (relative > relative_tolerance)
            report.violating_pairs.push_back(ordered(u.grain.id, v.grain.id));
    });
    std::sort(report.violating_pairs.begin(), report.violating_pairs.end());
    return report;
}

bool touching(const GrownGrain& a, const GrownGrain& b)
{
    const double scale = std::max(grown_radius(a), grown_radius(b));
    return separation(a.body(), b.body()).distance <= kTouchTolerance * scale;
}

std::vector<GrainId> earlier_neighbours(const HardCoreResult& result, GrainId id)
{
    const GrownGrain& m = result.find(id);
    std::vector<GrainId> out;
    for (const GrownGrain& n : result.grains) {
        if (n.grain.id == id || !(n.R > 0.0))
            continue;
        if (m.R > 0.0) {
            if (n.status == GrainStatus::capped || m.status == GrainStatus::capped)
                continue;
            if (n.stop_time() > m.stop_time() + kStopTimeTolerance)
                continue;
            const double reach = grown_radius(m) + grown_radius(n);
            if (norm(m.grain.x - n.grain.x) > reach * (1.0 + 2.0 * kTouchTolerance))
                continue;
            if (touching(m, n))
                out.push_back(n.grain.id);
        } else {
            const double a = n.grain.shape.gauge(m.grain.x - n.grain.x);
            const double slack = kTouchTolerance * std::max(1.0, n.R);
            if (a <= n.R + slack && m.grain.t >= n.grain.t + a - kStopTimeTolerance)
                out.push_back(n.grain.id);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

NeighbourGraph neighbour_graph(const HardCoreResult& result)
{
    NeighbourGraph graph;
    std::vector<std::size_t> selected;
    std::vector<std::size_t> vertex_of(result.grains.size(), 0);
    for (std::size_t i = 0; i < result.grains.size(); ++i) {
        const GrownGrain& g = result.grains[i];
        if (!positive(g))
            continue;
        vertex_of[i] = selected.size();
        selected.push_back(i);
        graph.ids.push_back(g.grain.id);
        graph.stop_times.push_back(g.stop_time());
        graph.on_boundary.push_back(body_on_boundary(g, result.window, result.dimension) ? 1 : 0);
    }
    graph.adjacency.resize(selected.size());
    for_each_close_pair(result, selected, [&](std::size_t i, std::size_t j) {
        const GrownGrain& u = result.grains[i];
        const GrownGrain& v = result.grains[j];
        if (!touching(u, v))
            return;
        NeighbourGraph::Edge e;
        e.a = vertex_of[i];
        e.b = vertex_of[j];
        e.doublet = std::abs(u.stop_time() - v.stop_time()) <= kStopTimeTolerance;
        graph.adjacency[e.a].push_back(graph.edges.size());
        graph.adjacency[e.b].push_back(graph.edges.size());
        graph.edges.push_back(e);
    });
    return graph;
}

std::vector<Cluster> clusters(const NeighbourGraph& graph)
{
    const std::size_t n = graph.size();
    std::vector<int> label(n, -1);
    std::vector<Cluster> out;
    for (std::size_t start = 0; start < n; ++start) {
        if (label[start] >= 0)
            continue;
        Cluster cluster;
        cluster.id = static_cast<int>(out.size());
        std::vector<std::size_t> stack{start};
        label[start] = cluster.id;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            cluster.members.push_back(graph.ids[v]);
            cluster.touches_boundary = cluster.touches_boundary || graph.on_boundary[v];
            for (std::size_t e : graph.adjacency[v]) {
                const auto& edge = graph.edges[e];
                const std::size_t w = edge.a == v ? edge.b : edge.a;
                if (edge.doublet && v == edge.a)
                    ++cluster.doublet_count;
                if (label[w] < 0) {
                    label[w] = cluster.id;
                    stack.push_back(w);
                }
            }
        }
        std::sort(cluster.members.begin(), cluster.members.end());
        out.push_back(std::move(cluster));
    }
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) { return a.members[0] < b.members[0]; });
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].id = static_cast<int>(i);
    return out;
}

std::vector<GrainPair> doublets(const NeighbourGraph& graph)
{
    std::vector<GrainPair> out;
    for (const auto& e : graph.edges)
        if (e.doublet)
            out.push_back(ordered(graph.ids[e.a], graph.ids[e.b]));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<GrainPair> doublets(const HardCoreResult& result)
{
    return doublets(neighbour_graph(result));
}

std::vector<GrainPair> stop_time_order_violations(const NeighbourGraph& graph)
{
    std::vector<GrainPair> out;
    std::vector<char> seen(graph.size(), 0);
    for (const auto& root : graph.edges) {
        if (!root.doublet || seen[root.a] || seen[root.b])
            continue;
        std::deque<std::size_t> queue{root.a, root.b};
        seen[root.a] = seen[root.b] = 1;
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t e : graph.adjacency[v]) {
                const auto& edge = graph.edges[e];
                const std::size_t w = edge.a == v ? edge.b : edge.a;
                if (seen[w])
                    continue;
                seen[w] = 1;
                if (!(graph.stop_times[w] > graph.stop_times[v]))
                    out.emplace_back(graph.ids[v], graph.ids[w]);
                queue.push_back(w);
            }
        }
    }
    return out;
}

void check_regime(const Configuration& config, double c)
{
    constexpr double slack = 1e-12;
    if (!(c >= 1.0))
        throw InvalidRegime("c must be at least 1");
    for (const Grain& g : config.grains) {
        if (g.t != 0.0)
            throw InvalidRegime("grain " + std::to_string(g.id) + " has a nonzero birth");
        if (g.shape.inradius() < 1.0 - slack || g.shape.circumradius() > c * (1.0 + slack))
            throw InvalidRegime("grain " + std::to_string(g.id) + " has a shape outside [B, cB]");
    }
}

StabilizationRecord stabilization(const Configuration& config, GrainId id, double c, std::size_t chain_budget)
{
    check_regime(config, c);
    const auto& grains = config.grains;
    const auto it = std::find_if(grains.begin(), grains.end(), [&](const Grain& g) { return g.id == id; });
    if (it == grains.end())
        throw InvalidArgument("unknown grain id " + std::to_string(id));
    const std::size_t root = static_cast<std::size_t>(it - grains.begin());
    const Grain& y = grains[root];

    StabilizationRecord rec;
    rec.id = id;
    rec.y = y.x;
    rec.c = c;
    if (grains.size() < 2)
        return rec;

    for (std::size_t j = 0; j < grains.size(); ++j)
        if (j != root)
            rec.D = std::min(rec.D, y.shape.gauge(grains[j].x - y.x));

    std::vector<Vec> centers;
    for (const Grain& g : grains)
        centers.push_back(g.x);
    detail::SpatialGrid grid(centers, config.dimension);

    // best[j]: largest final step over descending chains from y ending at j.
    // Labels leave the heap in nonincreasing order, so each grain expands once.
    std::vector<double> best(grains.size(), -1.0);
    std::vector<char> done(grains.size(), 0);
    std::priority_queue<std::pair<double, std::size_t>> heap;
    auto relax = [&](std::size_t from, double limit) {
        grid.for_each_within(grains[from].x, 2.0 * c * limit, [&](std::size_t z) {
            if (z == root || z == from || done[z] || rec.truncated)
                return;
            if (++rec.work > chain_budget) {
                rec.truncated = true;
                return;
            }
            const double e = first_contact_time(grains[from], grains[z]);
            if (e <= limit && e > best[z]) {
                best[z] = e;
                heap.emplace(e, z);
            }
        });
    };
    relax(root, rec.D);
    while (!heap.empty() && !rec.truncated) {
        const auto [label, x] = heap.top();
        heap.pop();
        if (done[x] || label != best[x])
            continue;
        done[x] = 1;
        relax(x, label);
    }
    if (rec.truncated)
        return rec;

    rec.S.push_back({y.x, 2.0 * c * rec.D});
    rec.U = 2.0 * c * rec.D;
    for (std::size_t j = 0; j < grains.size(); ++j) {
        if (!done[j])
            continue;
        rec.endpoints.push_back({grains[j].id, best[j]});
        rec.S.push_back({grains[j].x, 2.0 * c * best[j]});
        rec.U = std::max(rec.U, norm(grains[j].x - y.x) + 2.0 * c * best[j]);
    }
    return rec;
}

namespace {

Vec random_direction(Philox& rng, int dimension)
{
    if (dimension == 2) {
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        return {std::cos(phi), std::sin(phi), 0.0};
    }
    const double z = 2.0 * rng.uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(phi), s * std::sin(phi), z};
}

double growth_of(const Configuration& config, GrainId id)
{
    return build(config).find(id).R;
}

}  // namespace

SpotCheckReport stabilization_spot_check(const Configuration& config, GrainId id, const StabilizationRecord& record,
                                         int trials, std::uint64_t seed)
{
    if (!record.finite())
        throw InvalidArgument("spot check needs a finite, untruncated stabilization record");
    SpotCheckReport report;
    if (trials <= 0)
        return report;

    const Grain& y = *std::find_if(config.grains.begin(), config.grains.end(),
                                   [&](const Grain& g) { return g.id == id; });
    const double reference = growth_of(config, id);

    Configuration restricted = config;
    restricted.grains.clear();
    GrainId next_id = 0;
    for (const Grain& g : config.grains) {
        next_id = std::max(next_id, g.id + 1);
        if (norm(g.x - y.x) <= record.U)
            restricted.grains.push_back(g);
    }

    for (int trial = 0; trial < trials; ++trial) {
        Philox rng(seed, static_cast<std::uint32_t>(trial), 0);
        const int k = 1 + static_cast<int>(4.0 * rng.uniform());
        std::vector<Grain> extra;
        for (int i = 0; i < k; ++i) {
            Grain g;
            g.id = next_id + i;
            const double radius = record.U * (1.0 + 1e-6) + (record.U + 2.0) * rng.uniform();
            g.x = y.x + radius * random_direction(rng, config.dimension);
            const auto pick = static_cast<std::size_t>(rng.uniform() * static_cast<double>(config.grains.size()));
            g.shape = config.grains[std::min(pick, config.grains.size() - 1)].shape;
            extra.push_back(g);
        }
        Configuration full = config;
        Configuration local = restricted;
        full.grains.insert(full.grains.end(), extra.begin(), extra.end());
        local.grains.insert(local.grains.end(), extra.begin(), extra.end());
        const double change =
            std::max(std::abs(growth_of(full, id) - reference), std::abs(growth_of(local, id) - reference));
        report.max_change = std::max(report.max_change, change);
        report.passed = report.passed && change <= 1e-9;
        ++report.trials;

        Configuration control = config;
        Grain inside;
        inside.id = next_id;
        inside.x = y.x + 0.9 * record.D * y.shape.inradius() * random_direction(rng, config.dimension);
        inside.shape = y.shape;
        control.grains.push_back(inside);
        if (std::abs(growth_of(control, id) - reference) > 1e-9)
            ++report.control_changes;
    }
    return report;
}

bool TailCurve::nonincreasing() const
{
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].t >= points[i - 1].t && points[i].tail > points[i - 1].tail)
            return false;
    return true;
}

TailCurve tail_curve_U(const ScenarioSpec& spec, std::size_t replicates, std::span<const double> thresholds,
                       std::size_t chain_budget)
{
    TailCurve curve;
    curve.replicates = replicates;
    std::vector<double> radii;
    const Vec center = spec.window.center();
    for (std::size_t r = 0; r < replicates; ++r) {
        const Configuration config = sample(spec, r);
        if (config.grains.size() < 2) {
            radii.push_back(kInfinity);
            continue;
        }
        const auto nearest = std::min_element(config.grains.begin(), config.grains.end(), [&](auto& a, auto& b) {
            return norm2(a.x - center) < norm2(b.x - center);
        });
        const auto rec = stabilization(config, nearest->id, spec.c, chain_budget);
        if (rec.truncated)
            ++curve.truncated;
        radii.push_back(rec.U);
    }
    std::vector<double> xs, ys;
    for (double t : thresholds) {
        TailPoint p;
        p.t = t;
        if (replicates > 0) {
            const auto above = std::count_if(radii.begin(), radii.end(), [&](double u) { return u > t; });
            const double m = static_cast<double>(replicates);
            p.tail = static_cast<double>(above) / m;
            p.standard_error = std::sqrt(p.tail * (1.0 - p.tail) / m);
        }
        if (p.tail > 0.0) {
            xs.push_back(t);
            ys.push_back(std::log(p.tail));
        }
        curve.points.push_back(p);
    }
    if (xs.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(xs.size());
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        curve.log_slope = sxx > 0.0 ? sxy / sxx : 0.0;
    }
    return curve;
}

}  // namespace lily
