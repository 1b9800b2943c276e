// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include "lilygrow/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lilygrow/analysis.hpp"
#include "lilygrow/errors.hpp"
#include "lilygrow/rng.hpp"
#include "lilygrow/parallel.hpp"
#include "spatial_grid.hpp"

namespace lily {

const char* to_string(HKind h)
{
    switch (h) {
    case HKind::volume: return "volume";
    case HKind::count: return "count";
    case HKind::power: return "power";
    }
    return "?";
}

const char* to_string(WeightKind w)
{
    switch (w) {
    case WeightKind::constant: return "constant";
    case WeightKind::indicator: return "indicator";
    case WeightKind::polynomial: return "polynomial";
    }
    return "?";
}

double FunctionalSpec::mark(double R, const Shape& shape) const
{
    switch (h) {
    case HKind::volume: return shape.volume(R);
    case HKind::count: return 1.0;
    case HKind::power: return alpha * std::pow(R, beta);
    }
    return 0.0;
}

double FunctionalSpec::weight_at(const Vec& p, int dimension) const
{
    switch (weight) {
    case WeightKind::constant: return value;
    case WeightKind::indicator: return box.contains(p, dimension) ? 1.0 : 0.0;
    case WeightKind::polynomial: {
        double sum = 0.0;
        for (std::size_t k = 0; k < coefficients.size() && k < static_cast<std::size_t>(dimension); ++k) {
            double power = 1.0;
            for (double a : coefficients[k]) {
                sum += a * power;
                power *= p[static_cast<int>(k)];
            }
        }
        return sum;
    }
    }
    return 0.0;
}

double functional_value(const HardCoreResult& result, const FunctionalSpec& functional, double window_n,
                        std::size_t* capped)
{
    if (result.grains.size() < 2)
        return 0.0;
    const double shrink = std::pow(window_n, -1.0 / result.dimension);
    std::vector<double> terms;
    terms.reserve(result.grains.size());
    for (const GrownGrain& g : result.grains) {
        if (g.status == GrainStatus::capped && capped)
            ++*capped;
        terms.push_back(functional.weight_at(shrink * g.grain.x, result.dimension) *
                        functional.mark(g.R, g.grain.shape));
    }
    return pairwise_sum(terms);
}

double functional_value(const Configuration& config, const FunctionalSpec& functional, double window_n,
                        std::size_t* capped)
{
    if (config.grains.size() < 2)
        return 0.0;
    return functional_value(build(config), functional, window_n, capped);
}

Box centered_window(double n, int dimension)
{
    const double half = 0.5 * std::pow(n, 1.0 / dimension);
    Box box;
    for (int k = 0; k < dimension; ++k) {
        box.lo[k] = -half;
        box.hi[k] = half;
    }
    return box;
}

double union_volume_estimate(const HardCoreResult& result, std::size_t per_axis, std::uint64_t seed)
{
    const int d = result.dimension;
    std::vector<Vec> centers;
    std::vector<const GrownGrain*> bodies;
    Box bounds{Vec{kInfinity, kInfinity, 0.0}, Vec{-kInfinity, -kInfinity, 0.0}};
    if (d == 3) {
        bounds.lo.z = kInfinity;
        bounds.hi.z = -kInfinity;
    }
    double widest = 0.0;
    for (const GrownGrain& g : result.grains) {
        if (!(g.R > 0.0))
            continue;
        const double reach = g.R * g.grain.shape.circumradius();
        widest = std::max(widest, reach);
        for (int k = 0; k < d; ++k) {
            bounds.lo[k] = std::min(bounds.lo[k], g.grain.x[k] - reach);
            bounds.hi[k] = std::max(bounds.hi[k], g.grain.x[k] + reach);
        }
        centers.push_back(g.grain.x);
        bodies.push_back(&g);
    }
    if (bodies.empty() || per_axis == 0)
        return 0.0;

    detail::SpatialGrid grid(centers, d);
    Philox rng(seed, 0, 0);
    std::size_t cells = 1;
    for (int k = 0; k < d; ++k)
        cells *= per_axis;
    std::size_t hits = 0;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        Vec p{};
        std::size_t rest = cell;
        for (int k = 0; k < d; ++k) {
            const double index = static_cast<double>(rest % per_axis);
            rest /= per_axis;
            const double width = (bounds.hi[k] - bounds.lo[k]) / static_cast<double>(per_axis);
            p[k] = bounds.lo[k] + (index + rng.uniform()) * width;
        }
        bool inside = false;
        grid.for_each_within(p, widest, [&](std::size_t i) {
            if (!inside) {
                const GrownGrain& g = *bodies[i];
                inside = g.grain.shape.gauge(p - g.grain.x) <= g.R;
            }
        });
        hits += inside ? 1 : 0;
    }
    return bounds.volume(d) * static_cast<double>(hits) / static_cast<double>(cells);
}

double pairwise_sum(std::span<const double> values)
{
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values)
            s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double ks_distance_normal(std::vector<double> sample)
{
    if (sample.empty())
        return 0.0;
    std::sort(sample.begin(), sample.end());
    const double m = static_cast<double>(sample.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double cdf = 0.5 * std::erfc(-sample[i] / std::numbers::sqrt2);
        worst = std::max({worst, cdf - static_cast<double>(i) / m, static_cast<double>(i + 1) / m - cdf});
    }
    return worst;
}

namespace {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

Moments moments(std::span<const double> x)
{
    Moments out;
    if (x.empty())
        return out;
    out.mean = pairwise_sum(x) / static_cast<double>(x.size());
    if (x.size() < 2)
        return out;
    std::vector<double> sq;
    sq.reserve(x.size());
    for (double v : x)
        sq.push_back((v - out.mean) * (v - out.mean));
    out.variance = pairwise_sum(sq) / static_cast<double>(x.size() - 1);
    return out;
}

double mean_positive_R(const HardCoreResult& r)
{
    std::vector<double> values;
    for (const GrownGrain& g : r.grains)
        if (g.R > 0.0 && g.status != GrainStatus::capped)
            values.push_back(g.R);
    return values.empty() ? 0.0 : pairwise_sum(values) / static_cast<double>(values.size());
}

}  // namespace

CltReport clt_experiment(const ScenarioSpec& spec, const FunctionalSpec& functional, std::span<const double> n_list,
                         std::size_t M, std::uint64_t seed, unsigned workers)
{
    ScenarioSpec base = spec;
    base.regime = true;
    validate(base);
    if (M < 2)
        throw InvalidArgument("the CLT experiment needs at least two replicates");

    CltReport report;
    report.replicates = M;
    report.seed = seed;
    for (std::size_t k = 0; k < n_list.size(); ++k) {
        const double n = n_list[k];
        if (!(n > 0.0))
            throw InvalidArgument("window sizes must be positive");
        ScenarioSpec level_spec = base;
        level_spec.window = centered_window(n, base.dimension);
        level_spec.seed = mix_seed(seed, k);

        CltLevel level;
        level.n = n;
        level.samples.assign(M, 0.0);
        std::vector<std::size_t> capped(M, 0);
        parallel_for(M, workers, [&](std::size_t r) {
            const Configuration config = sample(level_spec, r);
            level.samples[r] = functional_value(config, functional, n, &capped[r]);
        });
        for (std::size_t c : capped)
            level.capped += c;

        const Moments mo = moments(level.samples);
        level.mean = mo.mean;
        level.variance = mo.variance;
        level.variance_over_n = mo.variance / n;
        const double sd = std::sqrt(mo.variance);
        level.standardized.resize(M, 0.0);
        if (sd > 0.0)
            for (std::size_t r = 0; r < M; ++r)
                level.standardized[r] = (level.samples[r] - mo.mean) / sd;
        level.standardized_mean = moments(level.standardized).mean;
        level.ks = sd > 0.0 ? ks_distance_normal(level.standardized) : 1.0;
        report.levels.push_back(std::move(level));
    }
    if (!report.levels.empty()) {
        const CltLevel& last = report.levels.back();
        report.sigma_hat = last.variance_over_n;
        report.ks_indeterminate = !(last.variance > 1e-24 * std::max(1.0, last.mean * last.mean));
    }
    return report;
}

Quantiles quantiles(std::vector<double> v)
{
    Quantiles q;
    if (v.empty())
        return q;
    std::sort(v.begin(), v.end());
    auto at = [&](double p) {
        const double pos = p * static_cast<double>(v.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
    };
    q.q05 = at(0.05);
    q.q25 = at(0.25);
    q.q50 = at(0.5);
    q.q75 = at(0.75);
    q.q95 = at(0.95);
    return q;
}

CompareReport compare_scenarios(const ScenarioSpec& spec, double t_max, std::size_t M, unsigned workers)
{
    ScenarioSpec a = spec;
    a.birth = BirthLaw::constant;
    a.birth_value = 0.0;
    a.regime = false;
    ScenarioSpec b = a;
    b.birth = BirthLaw::uniform;
    b.t_max = t_max;
    validate(a);
    validate(b);

    std::vector<PairedReplicate> outcomes(M);
    parallel_for(M, workers, [&](std::size_t r) {
        const Configuration ca = sample(a, r);
        const Configuration cb = sample(b, r);
        PairedReplicate& out = outcomes[r];
        out.grains = ca.grains.size();
        if (ca.grains.size() < 2)
            return;
        const HardCoreResult ra = build(ca);
        const HardCoreResult rb = build(cb);
        for (const GrownGrain& g : ra.grains)
            if (g.R > 0.0 && g.status != GrainStatus::capped)
                out.R_a.push_back(g.R);
        for (const GrownGrain& g : rb.grains) {
            if (g.R > 0.0 && g.status != GrainStatus::capped)
                out.R_b.push_back(g.R);
            if (g.status == GrainStatus::covered)
                ++out.covered_b;
        }
        for (const Cluster& c : clusters(neighbour_graph(ra)))
            out.clusters_a.push_back(static_cast<double>(c.size()));
        for (const Cluster& c : clusters(neighbour_graph(rb)))
            out.clusters_b.push_back(static_cast<double>(c.size()));
        out.mean_R_a = mean_positive_R(ra);
        out.mean_R_b = mean_positive_R(rb);
        out.covered_fraction_b = static_cast<double>(out.covered_b) / static_cast<double>(cb.grains.size());
        out.mean_cluster_a = moments(out.clusters_a).mean;
        out.mean_cluster_b = moments(out.clusters_b).mean;
    });

    CompareReport report;
    report.t_max = t_max;
    std::size_t covered = 0, total = 0;
    std::vector<double> diffs, pooled_a, pooled_b;
    for (const PairedReplicate& o : outcomes) {
        if (o.grains < 2)
            continue;
        pooled_a.insert(pooled_a.end(), o.R_a.begin(), o.R_a.end());
        pooled_b.insert(pooled_b.end(), o.R_b.begin(), o.R_b.end());
        covered += o.covered_b;
        total += o.grains;
        diffs.push_back(o.mean_R_b - o.mean_R_a);
    }
    report.quantiles_a = quantiles(std::move(pooled_a));
    report.quantiles_b = quantiles(std::move(pooled_b));
    report.replicates = std::move(outcomes);
    report.covered_fraction_b = total ? static_cast<double>(covered) / static_cast<double>(total) : 0.0;
    const Moments md = moments(diffs);
    report.mean_difference = md.mean;
    report.difference_se = diffs.size() > 1 ? std::sqrt(md.variance / static_cast<double>(diffs.size())) : 0.0;
    if (report.difference_se > 0.0)
        report.z = report.mean_difference / report.difference_se;
    else
        report.z = report.mean_difference > 0.0 ? kInfinity : 0.0;
    constexpr double z99 = 2.3263478740408408;
    report.b_larger = report.z > z99;
    return report;
}

}  // namespace lily
