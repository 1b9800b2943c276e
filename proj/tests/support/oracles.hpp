// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Slow, independent reference implementations used only by tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "lilygrow/model.hpp"

namespace lily::testing {

using Poly = std::vector<Vec>;

inline double cross(const Vec& o, const Vec& a, const Vec& b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Andrew's monotone chain, counterclockwise, collinear points dropped.
inline Poly hull(Poly pts)
{
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
        return pts;
    Poly h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0)
            --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

/// Hull of all pairwise vertex sums.
inline Poly brute_minkowski(const Poly& p, const Poly& q)
{
    Poly sums;
    for (const Vec& a : p)
        for (const Vec& b : q)
            sums.push_back(a + b);
    return hull(sums);
}

inline double shoelace(const Poly& p)
{
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        s += p[i].x * p[(i + 1) % p.size()].y - p[(i + 1) % p.size()].x * p[i].y;
    return 0.5 * s;
}

/// center + scale * vertices of a polygon shape.
inline Poly placed(const Vec& center, double scale, const Shape& shape)
{
    Poly out;
    for (const Vec& v : shape.vertices())
        out.push_back(center + scale * v);
    return out;
}

inline Poly minkowski_or_point(const Poly& body, const Poly& growth)
{
    return growth.empty() ? body : brute_minkowski(body, growth);
}

/// Closed convex polygons intersect iff no edge normal separates them.
/// Points and segments are handled as degenerate polygons.
inline bool sat_intersect(const Poly& a, const Poly& b)
{
    auto axes = [](const Poly& p, std::vector<Vec>& out) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            const Vec e = p[(i + 1) % p.size()] - p[i];
            if (norm(e) > 0)
                out.push_back(Vec{e.y, -e.x, 0.0});
        }
    };
    std::vector<Vec> normals;
    axes(a, normals);
    axes(b, normals);
    if (a.size() == 1 && b.size() == 1)
        return norm(a[0] - b[0]) == 0.0;
    for (const Vec& n : normals) {
        double amin = INFINITY, amax = -INFINITY, bmin = INFINITY, bmax = -INFINITY;
        for (const Vec& p : a) {
            amin = std::min(amin, dot(p, n));
            amax = std::max(amax, dot(p, n));
        }
        for (const Vec& p : b) {
            bmin = std::min(bmin, dot(p, n));
            bmax = std::max(bmax, dot(p, n));
        }
        if (amax < bmin || bmax < amin)
            return false;
    }
    return true;
}

inline double point_segment(const Vec& p, const Vec& a, const Vec& b)
{
    const Vec ab = b - a;
    const double len2 = norm2(ab);
    const double t = len2 > 0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    return norm(p - (a + t * ab));
}

/// Distance between disjoint convex polygons: the minimum over vertex to
/// edge distances in both directions.
inline double polygon_distance(const Poly& a, const Poly& b)
{
    if (sat_intersect(a, b))
        return 0.0;
    double best = INFINITY;
    auto scan = [&](const Poly& p, const Poly& q) {
        for (const Vec& v : p)
            for (std::size_t i = 0; i < q.size(); ++i)
                best = std::min(best, point_segment(v, q[i], q[(i + 1) % q.size()]));
    };
    scan(a, b);
    scan(b, a);
    return best;
}

/// Smallest r with (A + r GA) meeting (B + r GB), by doubling and 200 rounds
/// of bisection on the separating-axis test. Empty growth means {0}.
inline double brute_contact_radius(const Poly& A, const Poly& GA, const Poly& B, const Poly& GB)
{
    auto meets = [&](double r) {
        Poly ga, gb;
        for (const Vec& v : GA)
            ga.push_back(r * v);
        for (const Vec& v : GB)
            gb.push_back(r * v);
        return sat_intersect(minkowski_or_point(A, ga), minkowski_or_point(B, gb));
    };
    if (meets(0.0))
        return 0.0;
    double hi = 1.0;
    while (!meets(hi))
        hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (meets(mid) ? hi : lo) = mid;
    }
    return hi;
}

/// First contact time for ball grains in closed form.
inline double ball_first_contact(const Vec& x, double s, double rx, const Vec& y, double t, double ry)
{
    if (t < s)
        return ball_first_contact(y, t, ry, x, s, rx);
    const double dist = norm(x - y);
    const double a = dist / rx;
    if (a <= t - s)
        return s + a;
    return t + (dist - (t - s) * rx) / (rx + ry);
}

/// Every descending chain from `root` with first step at most `D`, by
/// exhaustive depth-first search. Returns endpoint id -> largest final step.
inline std::map<GrainId, double> enumerate_chain_endpoints(const Configuration& config, GrainId root, double D)
{
    const auto& g = config.grains;
    const std::size_t n = g.size();
    std::size_t r0 = 0;
    while (g[r0].id != root)
        ++r0;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            d[i][j] = d[j][i] = first_contact_time(g[i], g[j]);
    std::map<GrainId, double> out;
    std::vector<char> used(n, 0);
    used[r0] = 1;
    std::function<void(std::size_t, double)> walk = [&](std::size_t at, double last) {
        for (std::size_t z = 0; z < n; ++z) {
            if (used[z] || d[at][z] > last)
                continue;
            auto [it, fresh] = out.emplace(g[z].id, d[at][z]);
            if (!fresh)
                it->second = std::max(it->second, d[at][z]);
            used[z] = 1;
            walk(z, d[at][z]);
            used[z] = 0;
        }
    };
    walk(r0, D);
    return out;
}

}  // namespace lily::testing
