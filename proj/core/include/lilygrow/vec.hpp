// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace lily {

/// Fixed 3-component vector. Two-dimensional data keeps z = 0.
struct Vec {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec() = default;
    constexpr Vec(double x_, double y_, double z_ = 0.0) : x(x_), y(y_), z(z_) {}

    constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec& operator+=(const Vec& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec& operator-=(const Vec& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    friend constexpr Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend constexpr Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend constexpr Vec operator-(const Vec& a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr Vec operator*(Vec a, double s) { return a *= s; }
    friend constexpr Vec operator*(double s, Vec a) { return a *= s; }
    friend constexpr bool operator==(const Vec&, const Vec&) = default;
};

constexpr double dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
constexpr double norm2(const Vec& a) { return dot(a, a); }
/// z-component of the planar cross product.
constexpr double cross2(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
inline bool is_finite(const Vec& a) { return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z); }

}  // namespace lily
