// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include "lilygrow/model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "lilygrow/errors.hpp"

namespace lily {

double Box::volume(int dimension) const
{
    double v = 1.0;
    for (int i = 0; i < dimension; ++i)
        v *= hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
    return v;
}

bool Box::contains(const Vec& p, int dimension) const
{
    for (int i = 0; i < dimension; ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (p[k] < lo[k] || p[k] > hi[k])
            return false;
    }
    return true;
}

const char* to_string(GrainStatus status)
{
    switch (status) {
    case GrainStatus::stopped: return "stopped";
    case GrainStatus::covered: return "covered";
    case GrainStatus::capped: return "capped";
    }
    return "?";
}

void validate(const Configuration& config)
{
    if (config.dimension != 2 && config.dimension != 3)
        throw InvalidConfiguration("dimension must be 2 or 3");
    std::unordered_set<GrainId> ids;
    std::vector<Vec> positions;
    positions.reserve(config.grains.size());
    for (const Grain& g : config.grains) {
        if (!is_finite(g.x) || !std::isfinite(g.t))
            throw InvalidConfiguration("grain " + std::to_string(g.id) + " has non-finite data");
        if (g.t < 0.0)
            throw InvalidConfiguration("grain " + std::to_string(g.id) + " has a negative birth time");
        if (g.shape.dimension() != config.dimension)
            throw InvalidConfiguration("grain " + std::to_string(g.id) + " has a shape of the wrong dimension");
        if (config.dimension == 2 && g.x.z != 0.0)
            throw InvalidConfiguration("planar grain " + std::to_string(g.id) + " has a z coordinate");
        if (!ids.insert(g.id).second)
            throw InvalidConfiguration("duplicate grain id " + std::to_string(g.id));
        positions.push_back(g.x);
    }
    std::sort(positions.begin(), positions.end(), [](const Vec& a, const Vec& b) {
        return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
    });
    if (std::adjacent_find(positions.begin(), positions.end()) != positions.end())
        throw InvalidConfiguration("two grains share a germ position");
}

Configuration translated(const Configuration& config, const Vec& shift)
{
    Configuration out = config;
    out.window.lo += shift;
    out.window.hi += shift;
    for (Grain& g : out.grains)
        g.x += shift;
    return out;
}

FirstContact first_contact(const Grain& u, const Grain& v)
{
    if (u.x == v.x)
        throw InvalidConfiguration("first_contact: coincident germ positions");
    // Canonical order: earlier birth first, ids break equal births.
    const bool swap = v.t < u.t || (v.t == u.t && v.id < u.id);
    const Grain& early = swap ? v : u;
    const Grain& late = swap ? u : v;
    const double gap = late.t - early.t;
    const double reach = early.shape.gauge(late.x - early.x);

    FirstContact out;
    out.coverage_margin = reach - gap;
    if (reach <= gap) {
        out.time = early.t + reach;
        out.kind = swap ? ContactKind::second_covers_first : ContactKind::first_covers_second;
        return out;
    }
    const double r = contact_radius(early.body(gap), early.shape, late.body(0.0), late.shape);
    out.time = late.t + r;
    out.kind = ContactKind::meet;
    return out;
}

double first_contact_time(const Grain& u, const Grain& v)
{
    return first_contact(u, v).time;
}

double stop_time_against_frozen(const Grain& u, const Grain& v, double v_growth)
{
    if (!(v_growth > 0.0))
        throw InvalidArgument("stop_time_against_frozen: frozen grain must have positive growth");
    return u.t + contact_radius(u.body(0.0), u.shape, v.body(v_growth), std::nullopt);
}

double stop_time_against_frozen(const Grain& u, const GrownGrain& v)
{
    return stop_time_against_frozen(u, v.grain, v.R);
}

double cap_radius(const Grain& g, const Box& window, int dimension)
{
    double r = 0.0;
    const int corners = 1 << dimension;
    for (int mask = 0; mask < corners; ++mask) {
        Vec c;
        for (int i = 0; i < dimension; ++i) {
            const auto k = static_cast<std::size_t>(i);
            c[k] = (mask >> i) & 1 ? window.hi[k] : window.lo[k];
        }
        r = std::max(r, g.shape.gauge(c - g.x));
    }
    return 2.0 * r;
}

}  // namespace lily
