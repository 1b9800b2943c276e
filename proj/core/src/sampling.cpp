// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include "lilygrow/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lilygrow/errors.hpp"
#include "lilygrow/rng.hpp"

namespace lily {

const char* to_string(GermProcess p)
{
    return p == GermProcess::poisson ? "poisson" : "binomial";
}

const char* to_string(BirthLaw b)
{
    switch (b) {
    case BirthLaw::constant: return "constant";
    case BirthLaw::uniform: return "uniform";
    case BirthLaw::exponential: return "exponential";
    }
    return "?";
}

const char* to_string(ShapeLaw s)
{
    switch (s) {
    case ShapeLaw::unit_ball: return "unit_ball";
    case ShapeLaw::random_ball: return "random_ball";
    case ShapeLaw::regular_polygon: return "regular_polygon";
    case ShapeLaw::fixed_polygon: return "fixed_polygon";
    }
    return "?";
}

namespace {

bool finite_box(const Box& b)
{
    return is_finite(b.lo) && is_finite(b.hi);
}

Shape draw_shape(const ScenarioSpec& spec, Philox& rng, const std::optional<Shape>& fixed)
{
    switch (spec.shape) {
    case ShapeLaw::unit_ball: return Shape::ball(1.0, spec.dimension);
    case ShapeLaw::random_ball: return Shape::ball(1.0 + (spec.c - 1.0) * rng.uniform(), spec.dimension);
    case ShapeLaw::regular_polygon: {
        const double rotation = spec.random_rotation ? 2.0 * std::numbers::pi * rng.uniform() : 0.0;
        return Shape::regular_polygon(spec.polygon_sides, 1.0, rotation);
    }
    case ShapeLaw::fixed_polygon: return *fixed;
    }
    return Shape::ball(1.0, spec.dimension);
}

}  // namespace

void validate(const ScenarioSpec& spec)
{
    if (spec.dimension != 2 && spec.dimension != 3)
        throw InvalidArgument("dimension must be 2 or 3");
    if (!finite_box(spec.window))
        throw InvalidArgument("window must be finite");
    for (int k = 0; k < spec.dimension; ++k)
        if (!(spec.window.hi[k] > spec.window.lo[k]))
            throw InvalidArgument("window has zero or negative extent");
    if (spec.process == GermProcess::poisson && !(spec.intensity > 0.0 && std::isfinite(spec.intensity)))
        throw InvalidArgument("intensity must be positive");
    if (spec.process == GermProcess::binomial && spec.count < 2)
        throw InvalidArgument("binomial count must be at least 2");
    switch (spec.birth) {
    case BirthLaw::constant:
        if (!(spec.birth_value >= 0.0 && std::isfinite(spec.birth_value)))
            throw InvalidArgument("constant birth must be finite and nonnegative");
        break;
    case BirthLaw::uniform:
        if (!(spec.t_max >= 0.0 && std::isfinite(spec.t_max)))
            throw InvalidArgument("t_max must be finite and nonnegative");
        break;
    case BirthLaw::exponential:
        if (!(spec.birth_rate > 0.0 && std::isfinite(spec.birth_rate)))
            throw InvalidArgument("birth rate must be positive");
        break;
    }
    if (!(spec.c >= 1.0 && std::isfinite(spec.c)))
        throw InvalidArgument("c must be at least 1");
    if (spec.dimension == 3 && spec.shape != ShapeLaw::unit_ball && spec.shape != ShapeLaw::random_ball)
        throw InvalidArgument("polygon shapes need dimension 2");
    if (spec.shape == ShapeLaw::regular_polygon && spec.polygon_sides < 3)
        throw InvalidArgument("a regular polygon needs at least 3 sides");
    std::optional<Shape> fixed;
    if (spec.shape == ShapeLaw::fixed_polygon)
        fixed = Shape::polygon(spec.polygon_vertices);

    if (!spec.regime)
        return;
    const bool zero_births = spec.birth == BirthLaw::constant && spec.birth_value == 0.0;
    if (!zero_births)
        throw InvalidRegime("the stabilization regime needs all births equal to 0");
    constexpr double slack = 1e-12;
    double inner = 1.0;
    double outer = 1.0;
    switch (spec.shape) {
    case ShapeLaw::unit_ball: break;
    case ShapeLaw::random_ball: outer = spec.c; break;
    case ShapeLaw::regular_polygon: outer = 1.0 / std::cos(std::numbers::pi / spec.polygon_sides); break;
    case ShapeLaw::fixed_polygon:
        inner = fixed->inradius();
        outer = fixed->circumradius();
        break;
    }
    if (inner < 1.0 - slack || outer > spec.c * (1.0 + slack))
        throw InvalidRegime("shape law violates B^d within K within c B^d");
}

Configuration sample(const ScenarioSpec& spec, std::uint64_t replicate)
{
    validate(spec);
    const auto rep = static_cast<std::uint32_t>(replicate);
    const int d = spec.dimension;

    std::size_t n = 0;
    if (spec.process == GermProcess::binomial) {
        n = static_cast<std::size_t>(spec.count);
    } else {
        Philox rng(spec.seed, rep, static_cast<std::uint32_t>(Stream::count));
        std::poisson_distribution<long long> poisson(spec.intensity * spec.window.volume(d));
        n = static_cast<std::size_t>(poisson(rng));
    }

    Configuration config;
    config.dimension = d;
    config.window = spec.window;
    config.grains.resize(n);

    Philox positions(spec.seed, rep, static_cast<std::uint32_t>(Stream::positions));
    auto draw_point = [&] {
        Vec p{};
        for (int k = 0; k < d; ++k)
            p[k] = spec.window.lo[k] + (spec.window.hi[k] - spec.window.lo[k]) * positions.uniform();
        return p;
    };
    for (std::size_t i = 0; i < n; ++i)
        config.grains[i].x = draw_point();

    // Redraw germs that sit within kMinGermDistance of an earlier germ. A sweep
    // on the first coordinate finds close pairs.
    for (bool again = n > 1; again;) {
        again = false;
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return config.grains[a].x.x < config.grains[b].x.x; });
        for (std::size_t a = 0; a < n && !again; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                const Vec& p = config.grains[order[a]].x;
                const Vec& q = config.grains[order[b]].x;
                if (q.x - p.x >= kMinGermDistance)
                    break;
                if (norm(p - q) < kMinGermDistance) {
                    config.grains[std::max(order[a], order[b])].x = draw_point();
                    again = true;
                    break;
                }
            }
    }

    Philox births(spec.seed, rep, static_cast<std::uint32_t>(Stream::births));
    Philox shapes(spec.seed, rep, static_cast<std::uint32_t>(Stream::shapes));
    std::optional<Shape> fixed;
    if (spec.shape == ShapeLaw::fixed_polygon)
        fixed = Shape::polygon(spec.polygon_vertices);
    for (std::size_t i = 0; i < n; ++i) {
        Grain& g = config.grains[i];
        g.id = static_cast<GrainId>(i);
        switch (spec.birth) {
        case BirthLaw::constant: g.t = spec.birth_value; break;
        case BirthLaw::uniform: g.t = spec.t_max * births.uniform(); break;
        case BirthLaw::exponential: g.t = -std::log1p(-births.uniform()) / spec.birth_rate; break;
        }
        g.shape = draw_shape(spec, shapes, fixed);
        if (!g.shape.strictly_convex())
            config.diagnostics.non_strictly_convex = true;
    }
    return config;
}

}  // namespace lily
