// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lilygrow/errors.hpp"
#include "lilygrow/geometry.hpp"
#include "lilygrow/rng.hpp"
#include "oracles.hpp"

using namespace lily;
using lily::testing::Poly;

namespace {

const double kSqrt2 = std::numbers::sqrt2;

Shape square()
{
    return Shape::polygon({{-1, -1, 0}, {1, -1, 0}, {1, 1, 0}, {-1, 1, 0}});
}

Shape random_polygon(Philox& rng)
{
    const int sides = 3 + static_cast<int>(rng.uniform() * 5);
    return Shape::regular_polygon(sides, 0.5 + rng.uniform(), 2 * std::numbers::pi * rng.uniform());
}

Vec random_point(Philox& rng, double spread)
{
    return {spread * (2 * rng.uniform() - 1), spread * (2 * rng.uniform() - 1), 0.0};
}

}  // namespace

TEST_SUITE("geometry")
{
    TEST_CASE("support values")
    {
        CHECK(Shape::ball(1).support({1, 0, 0}) == doctest::Approx(1.0));
        CHECK(square().support({1, 0, 0}) == doctest::Approx(1.0));
        CHECK(square().support({kSqrt2 / 2, kSqrt2 / 2, 0}) == doctest::Approx(kSqrt2).epsilon(1e-14));
        CHECK_THROWS_AS(square().support({0, 0, 0}), InvalidArgument);
        CHECK_THROWS_AS(Shape::ball(2).support({0, 0, 0}), InvalidArgument);
    }

    TEST_CASE("support is positively homogeneous in the body's scale")
    {
        Philox rng(3, 0, 0);
        for (int i = 0; i < 50; ++i) {
            const Shape k = random_polygon(rng);
            const Vec u = random_point(rng, 1.0);
            const double s = 0.1 + 5 * rng.uniform();
            Poly scaled = lily::testing::placed({}, s, k);
            double h = -INFINITY;
            for (const Vec& v : scaled)
                h = std::max(h, dot(v, u));
            CHECK(h == doctest::Approx(s * k.support(u)).epsilon(1e-12));
        }
    }

    TEST_CASE("circumradius and inradius")
    {
        CHECK(Shape::ball(2).circumradius() == 2.0);
        CHECK(Shape::ball(3).inradius() == 3.0);
        CHECK(square().circumradius() == doctest::Approx(kSqrt2));
        CHECK(square().inradius() == doctest::Approx(1.0));
        const Shape triangle = Shape::regular_polygon(3, 1.0);
        CHECK(triangle.inradius() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(triangle.circumradius() == doctest::Approx(2.0).epsilon(1e-12));
        const Shape shifted = Shape::polygon({{-0.5, -0.5, 0}, {1.5, -0.5, 0}, {1.5, 1.5, 0}, {-0.5, 1.5, 0}});
        CHECK(shifted.inradius() == doctest::Approx(0.5));
        CHECK(shifted.circumradius() >= shifted.inradius());
    }

    TEST_CASE("volume")
    {
        CHECK(Shape::ball(1).volume(1.0) == doctest::Approx(std::numbers::pi));
        CHECK(Shape::ball(1, 3).volume(1.0) == doctest::Approx(4.0 / 3.0 * std::numbers::pi));
        CHECK(square().volume(2.0) == doctest::Approx(16.0));
        CHECK(square().volume(0.0) == 0.0);
        CHECK(Shape::ball(2.5).volume(0.0) == 0.0);
        Philox rng(4, 0, 0);
        for (int i = 0; i < 50; ++i) {
            const Shape k = random_polygon(rng);
            const double s = 10 * rng.uniform();
            CHECK(k.volume(s) == doctest::Approx(s * s * k.volume(1.0)).epsilon(1e-12));
        }
    }

    TEST_CASE("invalid shapes are rejected")
    {
        CHECK_THROWS_AS(Shape::ball(0.0), InvalidArgument);
        CHECK_THROWS_AS(Shape::ball(-1.0), InvalidArgument);
        CHECK_THROWS_AS(Shape::ball(1.0, 4), InvalidArgument);
        // clockwise
        CHECK_THROWS_AS(Shape::polygon({{-1, -1, 0}, {-1, 1, 0}, {1, 1, 0}, {1, -1, 0}}), InvalidArgument);
        // origin outside
        CHECK_THROWS_AS(Shape::polygon({{1, 1, 0}, {2, 1, 0}, {2, 2, 0}}), InvalidArgument);
        // origin on the boundary
        CHECK_THROWS_AS(Shape::polygon({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), InvalidArgument);
        // collinear vertex
        CHECK_THROWS_AS(Shape::polygon({{-1, -1, 0}, {0, -1, 0}, {1, -1, 0}, {1, 1, 0}, {-1, 1, 0}}), InvalidArgument);
        // repeated vertex
        CHECK_THROWS_AS(Shape::polygon({{-1, -1, 0}, {1, -1, 0}, {1, -1, 0}, {1, 1, 0}}), InvalidArgument);
        CHECK_THROWS_AS(Shape::polygon({{-1, -1, 0}, {1, -1, 0}}), InvalidArgument);
    }

    TEST_CASE("gauge")
    {
        CHECK(Shape::ball(2).gauge({3, 4, 0}) == doctest::Approx(2.5));
        CHECK(square().gauge({0.5, -2, 0}) == doctest::Approx(2.0));
        CHECK(square().gauge({0, 0, 0}) == 0.0);
    }

    TEST_CASE("separation")
    {
        const PlacedBody a{{0, 0, 0}, 1, Shape::ball(1)};
        const PlacedBody b{{3, 0, 0}, 1, Shape::ball(1)};
        CHECK(separation(a, b).distance == doctest::Approx(1.0));
        CHECK_FALSE(separation(a, b).interiors_overlap);
        CHECK(separation(a, a).distance == 0.0);
        CHECK(separation(a, a).interiors_overlap);
        const PlacedBody p{{0, 0, 0}, 1, square()};
        const PlacedBody q{{4, 0, 0}, 1, square()};
        CHECK(separation(p, q).distance == doctest::Approx(2.0).epsilon(1e-12));
        const PlacedBody ball3{{0, 0, 0}, 1, Shape::ball(1, 3)};
        CHECK_THROWS_AS(separation(a, ball3), InvalidArgument);
    }

    TEST_CASE("polygon separation matches a vertex-edge scan")
    {
        Philox rng(5, 0, 0);
        int disjoint = 0;
        for (int i = 0; i < 300; ++i) {
            const PlacedBody a{random_point(rng, 3), 0.2 + rng.uniform(), random_polygon(rng)};
            const PlacedBody b{random_point(rng, 3), 0.2 + rng.uniform(), random_polygon(rng)};
            const double expected = lily::testing::polygon_distance(lily::testing::placed(a.center, a.scale, a.shape),
                                                                    lily::testing::placed(b.center, b.scale, b.shape));
            const Separation s = separation(a, b);
            CHECK(s.distance == doctest::Approx(expected).epsilon(1e-9).scale(1.0));
            disjoint += expected > 0;
        }
        CHECK(disjoint > 50);
    }

    TEST_CASE("touching bodies do not overlap")
    {
        const PlacedBody a{{0, 0, 0}, 1, square()};
        const PlacedBody b{{2, 0.5, 0}, 1, square()};
        CHECK(separation(a, b).distance == doctest::Approx(0.0).scale(1.0));
        CHECK(penetration_depth(a, b) == doctest::Approx(0.0).scale(1.0));
        const PlacedBody c{{1.5, 0, 0}, 1, square()};
        CHECK(penetration_depth(a, c) == doctest::Approx(0.5).epsilon(1e-9));
        const PlacedBody u{{0, 0, 0}, 1, Shape::ball(1)};
        const PlacedBody v{{1.5, 0, 0}, 1, Shape::ball(1)};
        CHECK(penetration_depth(u, v) == doctest::Approx(0.5).epsilon(1e-9));
    }

    TEST_CASE("contact radius closed forms")
    {
        const Vec x{0, 0, 0};
        const Vec y{7, 0, 0};
        CHECK(contact_radius(PlacedBody::point(x), Shape::ball(1), PlacedBody::point(y), std::nullopt) ==
              doctest::Approx(7.0).epsilon(1e-14));
        CHECK(contact_radius(PlacedBody::point(x), Shape::ball(1), PlacedBody::point({10, 0, 0}), Shape::ball(1)) ==
              doctest::Approx(5.0).epsilon(1e-14));
        const PlacedBody a{x, 1, Shape::ball(1)};
        const PlacedBody b{{1.5, 0, 0}, 1, Shape::ball(1)};
        CHECK(contact_radius(a, Shape::ball(1), b, Shape::ball(1)) == 0.0);
        CHECK(contact_radius(PlacedBody::point(x), std::nullopt, PlacedBody::point(y), std::nullopt) == kInfinity);
        CHECK(contact_radius(a, std::nullopt, b, std::nullopt) == 0.0);
    }

    TEST_CASE("contact radius is translation invariant")
    {
        Philox rng(6, 0, 0);
        for (int i = 0; i < 100; ++i) {
            const Shape ka = random_polygon(rng), kb = random_polygon(rng);
            const PlacedBody a{random_point(rng, 5), rng.uniform(), random_polygon(rng)};
            const PlacedBody b{random_point(rng, 5), rng.uniform(), random_polygon(rng)};
            const double r = contact_radius(a, ka, b, kb);
            for (int k = 0; k < 5; ++k) {
                const Vec shift = random_point(rng, 100);
                const PlacedBody a2{a.center + shift, a.scale, a.shape};
                const PlacedBody b2{b.center + shift, b.scale, b.shape};
                CHECK(std::abs(contact_radius(a2, ka, b2, kb) - r) <= 1e-9);
            }
        }
    }

    TEST_CASE("ball closed forms agree with bisection")
    {
        Philox rng(7, 0, 0);
        for (int i = 0; i < 200; ++i) {
            const int dim = rng.uniform() < 0.5 ? 2 : 3;
            const PlacedBody a{random_point(rng, 10), 2 * rng.uniform(), Shape::ball(0.5 + rng.uniform(), dim)};
            PlacedBody b{random_point(rng, 10), 2 * rng.uniform(), Shape::ball(0.5 + rng.uniform(), dim)};
            if (dim == 3)
                b.center.z = 4 * rng.uniform();
            const Shape ga = Shape::ball(0.5 + rng.uniform(), dim);
            const Shape gb = Shape::ball(0.5 + rng.uniform(), dim);
            CHECK(std::abs(contact_radius(a, ga, b, gb) - detail::contact_radius_bisection(a, ga, b, gb)) <= 1e-9);
            CHECK(std::abs(contact_radius(a, ga, b, std::nullopt) -
                           detail::contact_radius_bisection(a, ga, b, std::nullopt)) <= 1e-9);
        }
    }

    TEST_CASE("polygon closed form agrees with bisection")
    {
        Philox rng(12, 0, 0);
        for (int i = 0; i < 300; ++i) {
            const Shape ka = random_polygon(rng), kb = random_polygon(rng);
            const PlacedBody a{random_point(rng, 6), rng.uniform() < 0.5 ? 0.0 : rng.uniform(), random_polygon(rng)};
            const PlacedBody b{random_point(rng, 6), rng.uniform() < 0.5 ? 0.0 : rng.uniform(), random_polygon(rng)};
            CHECK(std::abs(contact_radius(a, ka, b, kb) - detail::contact_radius_bisection(a, ka, b, kb)) <= 1e-9);
            CHECK(std::abs(contact_radius(a, ka, b, std::nullopt) -
                           detail::contact_radius_bisection(a, ka, b, std::nullopt)) <= 1e-9);
            CHECK(std::abs(contact_radius(a, std::nullopt, b, kb) -
                           detail::contact_radius_bisection(a, std::nullopt, b, kb)) <= 1e-9);
        }
    }

    TEST_CASE("mixed ball and polygon growth")
    {
        const PlacedBody a = PlacedBody::point({0, 0, 0});
        const PlacedBody b{{10, 0, 0}, 1.0, square()};
        // unit ball growth against a square of half-width 1: gap 9
        CHECK(contact_radius(a, Shape::ball(1), b, std::nullopt) == doctest::Approx(9.0).epsilon(1e-9));
        // both grow, square at rate 1 along the axis
        CHECK(contact_radius(a, Shape::ball(1), PlacedBody::point({10, 0, 0}), square()) ==
              doctest::Approx(5.0).epsilon(1e-9));
        const PlacedBody ball_body{{10, 0, 0}, 2.0, Shape::ball(1)};
        CHECK(contact_radius(a, square(), ball_body, std::nullopt) == doctest::Approx(8.0).epsilon(1e-9));
    }

    TEST_CASE("polygon contact radius matches a separating-axis bisection")
    {
        Philox rng(8, 0, 0);
        for (int i = 0; i < 60; ++i) {
            const Shape ka = random_polygon(rng), kb = random_polygon(rng);
            const PlacedBody a{random_point(rng, 6), rng.uniform(), random_polygon(rng)};
            const PlacedBody b{random_point(rng, 6), rng.uniform(), random_polygon(rng)};
            const Poly A = lily::testing::placed(a.center, a.scale, a.shape);
            const Poly B = lily::testing::placed(b.center, b.scale, b.shape);
            const Poly GA = lily::testing::placed({}, 1, ka);
            const Poly GB = lily::testing::placed({}, 1, kb);
            CHECK(contact_radius(a, ka, b, kb) ==
                  doctest::Approx(lily::testing::brute_contact_radius(A, GA, B, GB)).epsilon(1e-8).scale(1.0));
            CHECK(contact_radius(a, ka, b, std::nullopt) ==
                  doctest::Approx(lily::testing::brute_contact_radius(A, GA, B, {})).epsilon(1e-8).scale(1.0));
        }
    }

    TEST_CASE("grown bodies are disjoint below the contact radius and meet above it")
    {
        Philox rng(9, 0, 0);
        for (int i = 0; i < 100; ++i) {
            const Shape ka = random_polygon(rng), kb = random_polygon(rng);
            const PlacedBody a = PlacedBody::point(random_point(rng, 6));
            const PlacedBody b{random_point(rng, 6), rng.uniform(), random_polygon(rng)};
            const double r = contact_radius(a, ka, b, kb);
            if (r <= 0.0)
                continue;
            const Poly GA = lily::testing::placed({}, 1, ka), GB = lily::testing::placed({}, 1, kb);
            auto grown = [&](double s) {
                Poly ga, gb;
                for (const Vec& v : GA)
                    ga.push_back(s * v);
                for (const Vec& v : GB)
                    gb.push_back(s * v);
                return lily::testing::sat_intersect(
                    lily::testing::brute_minkowski({a.center}, ga),
                    lily::testing::brute_minkowski(lily::testing::placed(b.center, b.scale, b.shape), gb));
            };
            CHECK_FALSE(grown(r * (1 - 1e-6)));
            CHECK(grown(r + 1e-8));
        }
    }

    TEST_CASE("Minkowski sum matches the hull of pairwise sums")
    {
        Philox rng(10, 0, 0);
        for (int i = 0; i < 100; ++i) {
            const Poly p = lily::testing::placed({}, 1, random_polygon(rng));
            const Poly q = lily::testing::placed({}, 1, random_polygon(rng));
            const auto sum = minkowski_sum(p, q);
            const Poly expected = lily::testing::brute_minkowski(p, q);
            CHECK(polygon_area(sum) == doctest::Approx(lily::testing::shoelace(expected)).epsilon(1e-12));
            CHECK(sum.size() == expected.size());
        }
        const Poly sq = lily::testing::placed({}, 1, square());
        CHECK(polygon_area(minkowski_sum(sq, sq)) == doctest::Approx(16.0));
    }

    TEST_CASE("volume growth of Minkowski combinations stays under the mixed-volume bound")
    {
        // V(rK1 + tK2) - V(rK1 + sK2) <= max_i (t^i - s^i) * sum_{j<d} kappa_d C(d,j) r^j r1^j r2^(d-j), d = 2.
        Philox rng(11, 0, 0);
        for (int i = 0; i < 200; ++i) {
            const Shape k1 = random_polygon(rng), k2 = random_polygon(rng);
            const double r = 3 * rng.uniform();
            double s = 3 * rng.uniform(), t = 3 * rng.uniform();
            if (s > t)
                std::swap(s, t);
            auto volume = [&](double scale) {
                Poly a = lily::testing::placed({}, r, k1), b = lily::testing::placed({}, scale, k2);
                if (r == 0.0)
                    return lily::testing::shoelace(b);
                return polygon_area(minkowski_sum(a, b));
            };
            const double r1 = k1.circumradius(), r2 = k2.circumradius();
            const double growth = std::max(t - s, t * t - s * s);
            const double bound = growth * std::numbers::pi * (r2 * r2 + 2 * r * r1 * r2);
            CHECK(volume(t) - volume(s) <= bound * (1 + 1e-12) + 1e-12);
        }
    }
}
