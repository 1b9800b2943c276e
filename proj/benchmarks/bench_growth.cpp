// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>

#include "lilygrow/analysis.hpp"
#include "lilygrow/builder.hpp"
#include "lilygrow/oracle.hpp"
#include "lilygrow/sampling.hpp"

namespace {

lily::ScenarioSpec square_window(double side, lily::ShapeLaw shape = lily::ShapeLaw::unit_ball)
{
    lily::ScenarioSpec spec;
    spec.window = {{0, 0, 0}, {side, side, 0}};
    spec.shape = shape;
    spec.c = shape == lily::ShapeLaw::unit_ball ? 1.0 : std::sqrt(2.0);
    spec.seed = 7;
    return spec;
}

void BM_BuildBalls(benchmark::State& state)
{
    const auto config = lily::sample(square_window(std::sqrt(static_cast<double>(state.range(0)))));
    for (auto _ : state)
        benchmark::DoNotOptimize(lily::build(config));
    state.SetComplexityN(static_cast<long>(config.grains.size()));
}
BENCHMARK(BM_BuildBalls)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_BuildSquares(benchmark::State& state)
{
    auto spec = square_window(std::sqrt(static_cast<double>(state.range(0))), lily::ShapeLaw::regular_polygon);
    spec.birth = lily::BirthLaw::uniform;
    const auto config = lily::sample(spec);
    for (auto _ : state)
        benchmark::DoNotOptimize(lily::build(config));
    state.SetComplexityN(static_cast<long>(config.grains.size()));
}
BENCHMARK(BM_BuildSquares)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_Oracle(benchmark::State& state)
{
    const auto config = lily::sample(square_window(std::sqrt(static_cast<double>(state.range(0)))));
    for (auto _ : state)
        benchmark::DoNotOptimize(lily::simulate_growth(config));
    state.SetComplexityN(static_cast<long>(config.grains.size()));
}
BENCHMARK(BM_Oracle)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_ContactRadiusPolygons(benchmark::State& state)
{
    const auto k = lily::Shape::regular_polygon(static_cast<int>(state.range(0)), 1.0, 0.2);
    const auto l = lily::Shape::regular_polygon(static_cast<int>(state.range(0)), 1.3, 0.7);
    const lily::PlacedBody a = lily::PlacedBody::point({0, 0, 0});
    const lily::PlacedBody b{{7, 3, 0}, 0.5, l};
    for (auto _ : state)
        benchmark::DoNotOptimize(lily::contact_radius(a, k, b, l));
}
BENCHMARK(BM_ContactRadiusPolygons)->Arg(3)->Arg(4)->Arg(8)->Arg(32);

void BM_ContactRadiusBalls(benchmark::State& state)
{
    const lily::PlacedBody a = lily::PlacedBody::point({0, 0, 0});
    const lily::PlacedBody b{{7, 3, 0}, 0.5, lily::Shape::ball(1.3)};
    const auto k = lily::Shape::ball(1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(lily::contact_radius(a, k, b, k));
}
BENCHMARK(BM_ContactRadiusBalls);

void BM_Stabilization(benchmark::State& state)
{
    auto spec = square_window(static_cast<double>(state.range(0)));
    spec.regime = true;
    const auto config = lily::sample(spec);
    const auto centre = config.grains[config.grains.size() / 2].id;
    for (auto _ : state)
        benchmark::DoNotOptimize(lily::stabilization(config, centre, 1.0));
}
BENCHMARK(BM_Stabilization)->Arg(20)->Arg(40)->Arg(80);

}  // namespace

BENCHMARK_MAIN();
