// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lilygrow/vec.hpp"

namespace lily {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Volume of the unit ball in dimension d (d in {1, 2, 3}).
double unit_ball_volume(int dimension);

enum class ShapeKind { ball, polygon };

/// A convex body with the origin strictly inside it.
///
/// Balls exist in two and three dimensions; polygons are planar and are
/// stored counterclockwise. Shapes are immutable and cheap to copy.
class Shape {
  public:
    static Shape ball(double radius, int dimension = 2);
    /// Throws InvalidArgument unless the vertices are strictly convex,
    /// counterclockwise, free of repeats, and surround the origin.
    static Shape polygon(std::vector<Vec> vertices);
    /// Regular polygon whose inscribed circle has the given radius. The
    /// first vertex sits at angle `rotation`.
    static Shape regular_polygon(int sides, double inradius, double rotation = 0.0);

    ShapeKind kind() const { return kind_; }
    bool is_ball() const { return kind_ == ShapeKind::ball; }
    int dimension() const { return dimension_; }
    /// Ball radius; zero for polygons.
    double radius() const { return radius_; }
    std::span<const Vec> vertices() const;

    /// h_K(u) = max over p in K of <p, u>. Throws on a zero direction.
    double support(const Vec& direction) const;
    /// A point of K attaining the support value in `direction`.
    Vec support_point(const Vec& direction) const;
    /// Smallest r with p in rK (the gauge function of K).
    double gauge(const Vec& p) const;

    double circumradius() const { return circumradius_; }
    double inradius() const { return inradius_; }
    /// Volume (area in 2D) of scale * K.
    double volume(double scale = 1.0) const;

    /// Only balls are strictly convex; polygons carry flat faces.
    bool strictly_convex() const { return kind_ == ShapeKind::ball; }

    friend bool operator==(const Shape& a, const Shape& b);

  private:
    struct PolygonData {
        std::vector<Vec> vertices;
        std::vector<Vec> normals;    // outward unit normal of edge i -> i+1
        std::vector<double> offsets; // distance from origin to edge line i
        double area = 0.0;
    };

    Shape() = default;

    ShapeKind kind_ = ShapeKind::ball;
    int dimension_ = 2;
    double radius_ = 0.0;
    double circumradius_ = 0.0;
    double inradius_ = 0.0;
    std::shared_ptr<const PolygonData> poly_;
};

/// The set center + scale * shape. scale = 0 is the singleton {center}.
struct PlacedBody {
    Vec center;
    double scale = 0.0;
    Shape shape = Shape::ball(1.0);

    static PlacedBody point(const Vec& p, const Shape& shape = Shape::ball(1.0)) { return {p, 0.0, shape}; }
};

struct Separation {
    /// Euclidean distance between the bodies, clamped at zero.
    double distance = 0.0;
    /// True when the interiors overlap by more than numerical noise.
    bool interiors_overlap = false;
};

Separation separation(const PlacedBody& a, const PlacedBody& b);

/// Depth of interior overlap: the smallest translation separating the
/// interiors. Zero for disjoint or merely touching bodies.
double penetration_depth(const PlacedBody& a, const PlacedBody& b);

/// Smallest r >= 0 with (a + r*grow_a) meeting (b + r*grow_b).
///
/// An empty optional is the degenerate growth shape {0}. Returns
/// kInfinity when neither side grows and the bodies are disjoint.
double contact_radius(const PlacedBody& a, const std::optional<Shape>& grow_a, const PlacedBody& b,
                      const std::optional<Shape>& grow_b);

/// Bisection tolerance on r for the generic contact-radius path.
inline constexpr double kContactTolerance = 1e-10;

namespace detail {
/// Contact radius by bracketing and bisection only, skipping closed forms.
double contact_radius_bisection(const PlacedBody& a, const std::optional<Shape>& grow_a, const PlacedBody& b,
                                const std::optional<Shape>& grow_b);
}  // namespace detail

/// Minkowski sum of two convex counterclockwise polygons (edge merge).
std::vector<Vec> minkowski_sum(std::span<const Vec> p, std::span<const Vec> q);
/// Signed shoelace area; positive for counterclockwise input.
double polygon_area(std::span<const Vec> polygon);

}  // namespace lily
