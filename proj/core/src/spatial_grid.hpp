// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "lilygrow/vec.hpp"

namespace lily::detail {

/// Uniform bucket grid over a fixed point set with removal. Used for
/// nearest-neighbour scans and fixed-radius candidate enumeration.
class SpatialGrid {
  public:
    SpatialGrid(std::span<const Vec> points, int dimension, double per_cell = 2.0)
        : points_(points.begin(), points.end()), dimension_(dimension), alive_(points.size(), 1)
    {
        lo_ = hi_ = points.empty() ? Vec{} : points[0];
        for (const Vec& p : points)
            for (int k = 0; k < dimension_; ++k) {
                lo_[k] = std::min(lo_[k], p[k]);
                hi_[k] = std::max(hi_[k], p[k]);
            }
        double volume = 1.0;
        double longest = 0.0;
        for (int k = 0; k < dimension_; ++k) {
            longest = std::max(longest, hi_[k] - lo_[k]);
        }
        if (longest <= 0.0)
            longest = 1.0;
        for (int k = 0; k < dimension_; ++k)
            volume *= std::max(hi_[k] - lo_[k], longest * 1e-3);
        const double cells = std::max(1.0, static_cast<double>(points.size()) / per_cell);
        cell_ = std::pow(volume / cells, 1.0 / dimension_);
        for (int k = 0; k < 3; ++k) {
            counts_[k] = 1;
            if (k < dimension_)
                counts_[k] = std::max<long>(1, static_cast<long>(std::floor((hi_[k] - lo_[k]) / cell_)) + 1);
        }
        buckets_.resize(static_cast<std::size_t>(counts_[0] * counts_[1] * counts_[2]));
        for (std::size_t i = 0; i < points_.size(); ++i)
            buckets_[flat(coords(points_[i]))].push_back(i);
    }

    void remove(std::size_t i)
    {
        if (!alive_[i])
            return;
        alive_[i] = 0;
        auto& b = buckets_[flat(coords(points_[i]))];
        b.erase(std::find(b.begin(), b.end(), i));
    }

    bool alive(std::size_t i) const { return alive_[i] != 0; }
    double cell_size() const { return cell_; }

    /// Visit every live point whose cell meets the box around `c` of half
    /// width `radius` (a superset of the ball).
    template <class F>
    void for_each_within(const Vec& c, double radius, F&& visit) const
    {
        std::array<long, 3> a{}, b{};
        for (int k = 0; k < 3; ++k) {
            if (k < dimension_) {
                a[k] = clamp_index(k, std::floor((c[k] - radius - lo_[k]) / cell_));
                b[k] = clamp_index(k, std::floor((c[k] + radius - lo_[k]) / cell_));
            }
        }
        for (long x = a[0]; x <= b[0]; ++x)
            for (long y = a[1]; y <= b[1]; ++y)
                for (long z = a[2]; z <= b[2]; ++z)
                    for (std::size_t i : buckets_[flat({x, y, z})])
                        visit(i);
    }

    /// Ring-by-ring scan around `c`. After finishing ring k, calls
    /// `more(dist)` with a lower bound on the distance to any unvisited
    /// point; the scan stops once it returns false.
    template <class Visit, class More>
    void ring_search(const Vec& c, Visit&& visit, More&& more) const
    {
        const auto home = coords(c);
        long max_ring = 0;
        for (int k = 0; k < dimension_; ++k)
            max_ring = std::max({max_ring, home[k], counts_[k] - 1 - home[k]});
        for (long ring = 0; ring <= max_ring; ++ring) {
            for_ring(home, ring, [&](std::size_t i) { visit(i); });
            if (!more(static_cast<double>(ring) * cell_))
                return;
        }
    }

  private:
    long clamp_index(int k, double v) const
    {
        if (v < 0.0)
            return 0;
        if (v > static_cast<double>(counts_[k] - 1))
            return counts_[k] - 1;
        return static_cast<long>(v);
    }

    std::array<long, 3> coords(const Vec& p) const
    {
        std::array<long, 3> out{};
        for (int k = 0; k < dimension_; ++k)
            out[k] = clamp_index(k, std::floor((p[k] - lo_[k]) / cell_));
        return out;
    }

    std::size_t flat(const std::array<long, 3>& c) const
    {
        return static_cast<std::size_t>((c[2] * counts_[1] + c[1]) * counts_[0] + c[0]);
    }

    template <class F>
    void for_ring(const std::array<long, 3>& home, long ring, F&& f) const
    {
        const long rz = dimension_ == 3 ? ring : 0;
        for (long dz = -rz; dz <= rz; ++dz) {
            const long z = home[2] + dz;
            if (z < 0 || z >= counts_[2])
                continue;
            for (long dy = -ring; dy <= ring; ++dy) {
                const long y = home[1] + dy;
                if (y < 0 || y >= counts_[1])
                    continue;
                const bool edge = std::abs(dz) == ring || std::abs(dy) == ring;
                const long step = edge ? 1 : 2 * ring;
                for (long dx = -ring; dx <= ring; dx += (step == 0 ? 1 : step)) {
                    const long x = home[0] + dx;
                    if (x < 0 || x >= counts_[0])
                        continue;
                    for (std::size_t i : buckets_[flat({x, y, z})])
                        f(i);
                }
            }
        }
    }

    std::vector<Vec> points_;
    int dimension_;
    std::vector<char> alive_;
    Vec lo_, hi_;
    double cell_ = 1.0;
    std::array<long, 3> counts_{1, 1, 1};
    std::vector<std::vector<std::size_t>> buckets_;
};

}  // namespace lily::detail
