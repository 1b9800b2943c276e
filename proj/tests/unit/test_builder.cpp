// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "lilygrow/builder.hpp"
#include "lilygrow/errors.hpp"
#include "lilygrow/rng.hpp"
#include "lilygrow/sampling.hpp"

using namespace lily;

namespace {

Configuration line(std::vector<double> xs, std::vector<double> births = {})
{
    Configuration c;
    c.window = {{-1, -1, 0}, {30, 1, 0}};
    for (std::size_t i = 0; i < xs.size(); ++i)
        c.grains.push_back(Grain{static_cast<GrainId>(i), {xs[i], 0, 0}, births.empty() ? 0.0 : births[i]});
    return c;
}

ScenarioSpec balls(std::uint64_t seed)
{
    ScenarioSpec s;
    s.seed = seed;
    return s;
}

}  // namespace

TEST_SUITE("builder")
{
    TEST_CASE("two grains meet halfway")
    {
        const HardCoreResult r = build(line({0, 10}));
        CHECK(r.membership == Membership::in_h);
        CHECK(r.grains[0].R == doctest::Approx(5.0).epsilon(1e-12));
        CHECK(r.grains[1].R == doctest::Approx(5.0).epsilon(1e-12));
        CHECK(r.grains[0].round == 1);
        CHECK(r.grains[1].round == 1);
        REQUIRE(r.log.size() == 2);
        CHECK(r.log[0].rule == Rule::doublet);
    }

    TEST_CASE("collinear triple")
    {
        const HardCoreResult r = build(line({0, 10, 24}));
        CHECK(r.membership == Membership::in_h);
        CHECK(std::abs(r.grains[0].R - 5.0) <= 1e-9);
        CHECK(std::abs(r.grains[1].R - 5.0) <= 1e-9);
        CHECK(std::abs(r.grains[2].R - 9.0) <= 1e-9);
        CHECK(r.grains[2].earlier_neighbour_ids == std::vector<GrainId>{1});
    }

    TEST_CASE("pre-birth coverage leaves a capped survivor")
    {
        const HardCoreResult r = build(line({0, 2}, {0, 5}));
        CHECK(r.grains[1].R == 0.0);
        CHECK(r.grains[1].status == GrainStatus::covered);
        CHECK(r.grains[0].status == GrainStatus::capped);
        CHECK(r.membership == Membership::leftover_unstoppable);
        REQUIRE(r.cap_radius.has_value());
        CHECK(r.grains[0].R == *r.cap_radius);
        CHECK(r.grains[1].earlier_neighbour_ids == std::vector<GrainId>{0});
    }

    TEST_CASE("mutual nearest pairs")
    {
        const auto c = line({0, 10, 24});
        const auto pairs = mutual_nearest_pairs(c.grains);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].first == 0);
        CHECK(pairs[0].second == 1);
        CHECK(pairs[0].time == doctest::Approx(5.0));
        CHECK(mutual_nearest_pairs(std::span<const Grain>(c.grains.data(), 1)).empty());
        CHECK(mutual_nearest_pairs(std::span<const Grain>(c.grains.data() + 1, 2)).size() == 1);

        bool tie = false;
        const auto sym = line({0, 10, 20});
        mutual_nearest_pairs(sym.grains, &tie);
        CHECK(tie);
    }

    TEST_CASE("nearest frozen time")
    {
        RoundState state;
        const Grain u{0, {0, 0, 0}, 0};
        CHECK(nearest_frozen_time(u, state) == kInfinity);
        GrownGrain far;
        far.grain = Grain{1, {9, 0, 0}, 0};
        far.R = 5.0;
        state.frozen.push_back(far);
        CHECK(nearest_frozen_time(u, state) == doctest::Approx(4.0).epsilon(1e-12));
        GrownGrain near = far;
        near.grain = Grain{2, {0, 5, 0}, 0};
        near.R = 2.0;
        state.frozen.push_back(near);
        CHECK(nearest_frozen_time(u, state) == doctest::Approx(3.0).epsilon(1e-12));
        GrownGrain covered = far;
        covered.grain = Grain{3, {1, 0, 0}, 0};
        covered.R = 0.0;
        state.frozen.push_back(covered);
        CHECK(nearest_frozen_time(u, state) == doctest::Approx(3.0).epsilon(1e-12));
    }

    TEST_CASE("symmetric input is flagged as tie-degenerate")
    {
        const HardCoreResult r = build(line({0, 10, 20}));
        CHECK(r.membership == Membership::tie_degenerate);
        CHECK(r.diagnostics.tie_detected);
    }

    TEST_CASE("too few grains or bad geometry are rejected")
    {
        CHECK_THROWS_AS(build(line({0})), InvalidConfiguration);
        CHECK_THROWS_AS(build(line({})), InvalidConfiguration);
        CHECK_THROWS_AS(build(line({1, 1})), InvalidConfiguration);
        CHECK_THROWS_AS(build(line({0, NAN})), InvalidConfiguration);
    }

    TEST_CASE("classic lilypond pairwise constraint")
    {
        for (std::uint64_t rep = 0; rep < 20; ++rep) {
            const Configuration c = sample(balls(41), rep);
            const HardCoreResult r = build(c);
            if (r.membership != Membership::in_h)
                continue;
            for (std::size_t i = 0; i < c.grains.size(); ++i) {
                double slack = kInfinity;
                for (std::size_t j = 0; j < c.grains.size(); ++j) {
                    if (i == j)
                        continue;
                    const double gap = norm(c.grains[i].x - c.grains[j].x) - r.grains[i].R - r.grains[j].R;
                    CHECK(gap >= -1e-9);
                    slack = std::min(slack, gap);
                }
                CHECK(slack <= 1e-9);
            }
        }
    }

    TEST_CASE("translation invariance")
    {
        ScenarioSpec spec = balls(42);
        spec.birth = BirthLaw::uniform;
        spec.shape = ShapeLaw::regular_polygon;
        spec.c = std::sqrt(2.0);
        Philox rng(42, 0, 9);
        for (std::uint64_t rep = 0; rep < 5; ++rep) {
            const Configuration c = sample(spec, rep);
            const HardCoreResult r = build(c);
            for (int k = 0; k < 5; ++k) {
                const Vec shift{200 * rng.uniform() - 100, 200 * rng.uniform() - 100, 0};
                const HardCoreResult s = build(translated(c, shift));
                for (std::size_t i = 0; i < c.grains.size(); ++i)
                    CHECK(std::abs(r.grains[i].R - s.grains[i].R) <= 1e-9);
            }
        }
    }

    TEST_CASE("determinism")
    {
        ScenarioSpec spec = balls(43);
        spec.birth = BirthLaw::uniform;
        const Configuration c = sample(spec, 0);
        const HardCoreResult a = build(c), b = build(c);
        REQUIRE(a.grains.size() == b.grains.size());
        for (std::size_t i = 0; i < a.grains.size(); ++i) {
            CHECK(a.grains[i].R == b.grains[i].R);
            CHECK(a.grains[i].status == b.grains[i].status);
            CHECK(a.grains[i].round == b.grains[i].round);
        }
    }
}
