// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include "lilygrow/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "lilygrow/errors.hpp"

namespace lily {

double unit_ball_volume(int dimension)
{
    switch (dimension) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default: throw InvalidArgument("unit_ball_volume: dimension must be 1, 2 or 3");
    }
}

// ---------------------------------------------------------------------------
// Shape

Shape Shape::ball(double radius, int dimension)
{
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw InvalidArgument("ball radius must be positive and finite");
    if (dimension != 2 && dimension != 3)
        throw InvalidArgument("balls are supported in dimension 2 or 3");
    Shape s;
    s.kind_ = ShapeKind::ball;
    s.dimension_ = dimension;
    s.radius_ = radius;
    s.circumradius_ = radius;
    s.inradius_ = radius;
    return s;
}

Shape Shape::polygon(std::vector<Vec> vertices)
{
    const std::size_t n = vertices.size();
    if (n < 3)
        throw InvalidArgument("polygon needs at least 3 vertices");
    for (auto& v : vertices) {
        if (!is_finite(v))
            throw InvalidArgument("polygon vertex is not finite");
        v.z = 0.0;
    }
    auto data = std::make_shared<PolygonData>();
    data->normals.reserve(n);
    data->offsets.reserve(n);
    double circum = 0.0;
    double in = kInfinity;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& a = vertices[i];
        const Vec& b = vertices[(i + 1) % n];
        const Vec& c = vertices[(i + 2) % n];
        if (a == b)
            throw InvalidArgument("polygon has repeated vertices");
        if (!(cross2(b - a, c - b) > 0.0))
            throw InvalidArgument("polygon vertices must be strictly convex and counterclockwise");
        const Vec e = b - a;
        const double len = norm(e);
        const Vec normal{e.y / len, -e.x / len, 0.0};
        const double offset = dot(a, normal);
        data->normals.push_back(normal);
        data->offsets.push_back(offset);
        in = std::min(in, offset);
        circum = std::max(circum, norm(a));
    }
    if (!(in > 0.0))
        throw InvalidArgument("polygon must contain the origin in its interior");
    data->area = polygon_area(vertices);
    data->vertices = std::move(vertices);

    Shape s;
    s.kind_ = ShapeKind::polygon;
    s.dimension_ = 2;
    s.circumradius_ = circum;
    s.inradius_ = in;
    s.poly_ = std::move(data);
    return s;
}

Shape Shape::regular_polygon(int sides, double inradius, double rotation)
{
    if (sides < 3)
        throw InvalidArgument("regular polygon needs at least 3 sides");
    if (!(inradius > 0.0))
        throw InvalidArgument("regular polygon inradius must be positive");
    const double circum = inradius / std::cos(std::numbers::pi / sides);
    std::vector<Vec> v;
    v.reserve(static_cast<std::size_t>(sides));
    for (int k = 0; k < sides; ++k) {
        const double angle = rotation + 2.0 * std::numbers::pi * k / sides;
        v.emplace_back(circum * std::cos(angle), circum * std::sin(angle));
    }
    return polygon(std::move(v));
}

std::span<const Vec> Shape::vertices() const
{
    if (!poly_)
        return {};
    return poly_->vertices;
}

double Shape::support(const Vec& u) const
{
    const double len2 = norm2(u);
    if (!(len2 > 0.0))
        throw InvalidArgument("support: zero direction");
    if (kind_ == ShapeKind::ball)
        return radius_ * std::sqrt(len2);
    double best = -kInfinity;
    for (const Vec& v : poly_->vertices)
        best = std::max(best, dot(v, u));
    return best;
}

Vec Shape::support_point(const Vec& u) const
{
    const double len2 = norm2(u);
    if (!(len2 > 0.0))
        throw InvalidArgument("support_point: zero direction");
    if (kind_ == ShapeKind::ball)
        return u * (radius_ / std::sqrt(len2));
    const auto& vs = poly_->vertices;
    std::size_t arg = 0;
    double best = dot(vs[0], u);
    for (std::size_t i = 1; i < vs.size(); ++i) {
        const double h = dot(vs[i], u);
        if (h > best) {
            best = h;
            arg = i;
        }
    }
    return vs[arg];
}

double Shape::gauge(const Vec& p) const
{
    if (kind_ == ShapeKind::ball)
        return norm(p) / radius_;
    double g = 0.0;
    for (std::size_t i = 0; i < poly_->normals.size(); ++i)
        g = std::max(g, dot(p, poly_->normals[i]) / poly_->offsets[i]);
    return g;
}

double Shape::volume(double scale) const
{
    if (scale < 0.0)
        throw InvalidArgument("volume: negative scale");
    if (kind_ == ShapeKind::ball)
        return unit_ball_volume(dimension_) * std::pow(radius_ * scale, dimension_);
    return poly_->area * scale * scale;
}

bool operator==(const Shape& a, const Shape& b)
{
    if (a.kind_ != b.kind_ || a.dimension_ != b.dimension_)
        return false;
    if (a.kind_ == ShapeKind::ball)
        return a.radius_ == b.radius_;
    return a.poly_ == b.poly_ || a.poly_->vertices == b.poly_->vertices;
}

// ---------------------------------------------------------------------------
// Minkowski combinations: offset + sum of scale_i * shape_i

namespace {

struct Term {
    double scale;
    const Shape* shape;
};

struct ConvexSum {
    Vec offset;
    std::array<Term, 2> terms{};
    int count = 0;

    void add(double scale, const Shape* shape)
    {
        if (shape != nullptr && scale > 0.0)
            terms[static_cast<std::size_t>(count++)] = {scale, shape};
    }

    double support(const Vec& u) const
    {
        double h = dot(offset, u);
        for (int i = 0; i < count; ++i)
            h += terms[i].scale * terms[i].shape->support(u);
        return h;
    }

    Vec support_point(const Vec& u) const
    {
        Vec p = offset;
        for (int i = 0; i < count; ++i)
            p += terms[i].scale * terms[i].shape->support_point(u);
        return p;
    }

    bool all_balls() const
    {
        for (int i = 0; i < count; ++i)
            if (!terms[i].shape->is_ball())
                return false;
        return true;
    }

    /// Radius when every term is a ball (the sum is then a ball).
    double ball_radius() const
    {
        double r = 0.0;
        for (int i = 0; i < count; ++i)
            r += terms[i].scale * terms[i].shape->radius();
        return r;
    }

    double extent() const
    {
        double e = norm(offset);
        for (int i = 0; i < count; ++i)
            e += terms[i].scale * terms[i].shape->circumradius();
        return e;
    }
};

ConvexSum make_sum(const PlacedBody& body, double r = 0.0, const Shape* grow = nullptr)
{
    ConvexSum s;
    s.offset = body.center;
    s.add(body.scale, &body.shape);
    s.add(r, grow);
    return s;
}

constexpr double kGjkRelative = 1e-12;
constexpr int kGjkMaxIterations = 128;

/// Reduce the simplex w[0..n) to the sub-simplex carrying the point closest
/// to the origin and return that point. Sets `inside` when a full triangle
/// contains the origin.
Vec reduce_simplex(std::array<Vec, 3>& w, int& n, bool& inside)
{
    inside = false;
    auto segment = [](const Vec& a, const Vec& b, std::array<Vec, 3>& out, int& m) -> Vec {
        const Vec ab = b - a;
        const double len2 = norm2(ab);
        const double t = len2 > 0.0 ? -dot(a, ab) / len2 : 0.0;
        if (t <= 0.0) {
            out[0] = a;
            m = 1;
            return a;
        }
        if (t >= 1.0) {
            out[0] = b;
            m = 1;
            return b;
        }
        out[0] = a;
        out[1] = b;
        m = 2;
        return a + t * ab;
    };

    if (n == 1)
        return w[0];
    if (n == 2) {
        const Vec a = w[0], b = w[1];
        return segment(a, b, w, n);
    }
    const Vec a = w[0], b = w[1], c = w[2];
    const double area2 = cross2(b - a, c - a);
    if (std::abs(area2) > 0.0) {
        const double s0 = cross2(b - a, -a);
        const double s1 = cross2(c - b, -b);
        const double s2 = cross2(a - c, -c);
        const bool pos = s0 >= 0.0 && s1 >= 0.0 && s2 >= 0.0;
        const bool neg = s0 <= 0.0 && s1 <= 0.0 && s2 <= 0.0;
        if (pos || neg) {
            inside = true;
            return {};
        }
    }
    std::array<Vec, 3> best_w{};
    int best_n = 0;
    Vec best{};
    double best_d = kInfinity;
    const std::array<std::array<Vec, 2>, 3> edges{{{a, b}, {b, c}, {c, a}}};
    for (const auto& e : edges) {
        std::array<Vec, 3> tmp{};
        int m = 0;
        const Vec p = segment(e[0], e[1], tmp, m);
        const double d = norm2(p);
        if (d < best_d) {
            best_d = d;
            best = p;
            best_w = tmp;
            best_n = m;
        }
    }
    w = best_w;
    n = best_n;
    return best;
}

/// Distance between two planar convex sums by Gilbert's iteration on the
/// Minkowski difference. Stops early and returns a lower bound once the
/// distance is known to exceed `stop_above`.
double gjk_distance(const ConvexSum& A, const ConvexSum& B, double stop_above = kInfinity)
{
    auto support_diff = [&](const Vec& d) { return A.support_point(d) - B.support_point(-d); };
    const double scale = std::max({A.extent(), B.extent(), 1e-300});
    const double abs_eps2 = (1e-15 * scale) * (1e-15 * scale);

    std::array<Vec, 3> w{};
    int n = 1;
    Vec v = support_diff(Vec{1.0, 0.0});
    w[0] = v;
    for (int it = 0; it < kGjkMaxIterations; ++it) {
        const double vv = norm2(v);
        if (vv <= abs_eps2)
            return 0.0;
        const Vec p = support_diff(-v);
        const double vp = dot(v, p);
        if (vp > 0.0 && vp * vp > stop_above * stop_above * vv)
            return vp / std::sqrt(vv);
        if (vv - vp <= kGjkRelative * vv)
            return std::sqrt(vv);
        bool duplicate = false;
        for (int i = 0; i < n; ++i)
            if (norm2(w[static_cast<std::size_t>(i)] - p) <= abs_eps2)
                duplicate = true;
        if (duplicate)
            return std::sqrt(vv);
        w[static_cast<std::size_t>(n++)] = p;
        bool inside = false;
        v = reduce_simplex(w, n, inside);
        if (inside)
            return 0.0;
    }
    return norm(v);
}

void check_dimensions(const PlacedBody& a, const PlacedBody& b)
{
    if (a.shape.dimension() != b.shape.dimension())
        throw InvalidArgument("bodies have different dimensions");
}

double sum_distance(const ConvexSum& A, const ConvexSum& B, double stop_above = kInfinity)
{
    if (A.all_balls() && B.all_balls())
        return std::max(0.0, norm(A.offset - B.offset) - A.ball_radius() - B.ball_radius());
    return gjk_distance(A, B, stop_above);
}

double sum_penetration(const ConvexSum& A, const ConvexSum& B)
{
    if (A.all_balls() && B.all_balls())
        return std::max(0.0, A.ball_radius() + B.ball_radius() - norm(A.offset - B.offset));
    // Depth of the origin inside M = A - B is the minimum of h_M over unit
    // directions; negative values mean the origin lies outside M.
    auto h = [&](double theta) {
        const Vec u{std::cos(theta), std::sin(theta)};
        return A.support(u) + B.support(-u);
    };
    std::vector<double> candidates;
    for (const ConvexSum* s : {&A, &B}) {
        const double sign = s == &A ? 1.0 : -1.0;
        for (int i = 0; i < s->count; ++i) {
            const Shape& shape = *s->terms[i].shape;
            if (shape.is_ball())
                continue;
            const auto verts = shape.vertices();
            for (std::size_t k = 0; k < verts.size(); ++k) {
                const Vec e = verts[(k + 1) % verts.size()] - verts[k];
                const Vec nrm{sign * e.y, -sign * e.x};
                candidates.push_back(std::atan2(nrm.y, nrm.x));
            }
        }
    }
    constexpr int kSamples = 720;
    const double step = 2.0 * std::numbers::pi / kSamples;
    for (int k = 0; k < kSamples; ++k)
        candidates.push_back(k * step);

    std::vector<std::pair<double, double>> scored;
    scored.reserve(candidates.size());
    for (double th : candidates)
        scored.emplace_back(h(th), th);
    std::sort(scored.begin(), scored.end());
    double best = scored.front().first;
    const std::size_t refine = std::min<std::size_t>(6, scored.size());
    for (std::size_t i = 0; i < refine; ++i) {
        double lo = scored[i].second - step;
        double hi = scored[i].second + step;
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = h(x1), f2 = h(x2);
        for (int it = 0; it < 80; ++it) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = h(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = h(x2);
            }
        }
        best = std::min({best, f1, f2});
    }
    return std::max(0.0, best);
}

bool planar_only(const ConvexSum& s)
{
    for (int i = 0; i < s.count; ++i)
        if (s.terms[i].shape->dimension() != 2)
            return false;
    return true;
}

}  // namespace

Separation separation(const PlacedBody& a, const PlacedBody& b)
{
    check_dimensions(a, b);
    const ConvexSum A = make_sum(a);
    const ConvexSum B = make_sum(b);
    Separation out;
    out.distance = sum_distance(A, B);
    if (out.distance <= 0.0) {
        const double tol = 1e-12 * std::max({A.extent(), B.extent(), 1.0});
        out.interiors_overlap = sum_penetration(A, B) > tol;
    }
    return out;
}

double penetration_depth(const PlacedBody& a, const PlacedBody& b)
{
    check_dimensions(a, b);
    const ConvexSum A = make_sum(a);
    const ConvexSum B = make_sum(b);
    if (sum_distance(A, B) > 0.0)
        return 0.0;
    return sum_penetration(A, B);
}

namespace {

double growth_rate(const std::optional<Shape>& g, bool inner)
{
    if (!g)
        return 0.0;
    return inner ? g->inradius() : g->circumradius();
}

/// Outward (unnormalized) edge normals of a counterclockwise polygon.
void append_normals(const Shape& shape, double sign, std::vector<Vec>& out)
{
    const auto v = shape.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec e = v[(i + 1) % v.size()] - v[i];
        out.push_back({sign * e.y, -sign * e.x, 0.0});
    }
}

/// Planar polygons throughout: the grown bodies meet once the origin enters
/// P + rQ with P = A + (-B) and Q = G_A + (-G_B). Since h_Q > 0, the
/// answer is the largest -h_P(u) / h_Q(u), attained at an edge normal.
std::optional<double> polygon_contact_radius(const PlacedBody& a, const std::optional<Shape>& grow_a,
                                             const PlacedBody& b, const std::optional<Shape>& grow_b)
{
    auto polygonal = [](const std::optional<Shape>& g) { return !g || g->kind() == ShapeKind::polygon; };
    const bool a_point = a.scale == 0.0, b_point = b.scale == 0.0;
    if (!polygonal(grow_a) || !polygonal(grow_b) || (!a_point && a.shape.is_ball()) ||
        (!b_point && b.shape.is_ball()))
        return std::nullopt;

    std::vector<Vec> normals;
    if (!a_point)
        append_normals(a.shape, 1.0, normals);
    if (!b_point)
        append_normals(b.shape, -1.0, normals);
    if (grow_a)
        append_normals(*grow_a, 1.0, normals);
    if (grow_b)
        append_normals(*grow_b, -1.0, normals);

    double r = 0.0;
    for (const Vec& u : normals) {
        double hp = dot(a.center - b.center, u);
        if (!a_point)
            hp += a.scale * a.shape.support(u);
        if (!b_point)
            hp += b.scale * b.shape.support(-u);
        const double hq = (grow_a ? grow_a->support(u) : 0.0) + (grow_b ? grow_b->support(-u) : 0.0);
        r = std::max(r, -hp / hq);
    }
    return r;
}

}  // namespace

double detail::contact_radius_bisection(const PlacedBody& a, const std::optional<Shape>& grow_a, const PlacedBody& b,
                                        const std::optional<Shape>& grow_b)
{
    check_dimensions(a, b);
    if ((grow_a && grow_a->dimension() != a.shape.dimension()) ||
        (grow_b && grow_b->dimension() != b.shape.dimension()))
        throw InvalidArgument("growth shape dimension differs from body dimension");

    const Shape* ga = grow_a ? &*grow_a : nullptr;
    const Shape* gb = grow_b ? &*grow_b : nullptr;
    const double extent = std::max({make_sum(a).extent(), make_sum(b).extent(), 1.0});
    const double touch_tol = 1e-13 * extent;

    auto meets = [&](double r) {
        const ConvexSum A = make_sum(a, r, ga);
        const ConvexSum B = make_sum(b, r, gb);
        if (!(A.all_balls() && B.all_balls()) && !(planar_only(A) && planar_only(B)))
            throw InvalidArgument("non-ball bodies are only supported in the plane");
        return sum_distance(A, B, 2.0 * touch_tol) <= touch_tol;
    };

    if (meets(0.0))
        return 0.0;
    if (!ga && !gb)
        return kInfinity;

    const double gap = norm(a.center - b.center);
    const double outer_rate = growth_rate(grow_a, false) + growth_rate(grow_b, false);
    const double inner_rate = growth_rate(grow_a, true) + growth_rate(grow_b, true);
    double lo = std::max(
        0.0, (gap - a.scale * a.shape.circumradius() - b.scale * b.shape.circumradius()) / outer_rate);
    double hi = std::max(lo, (gap - a.scale * a.shape.inradius() - b.scale * b.shape.inradius()) / inner_rate);
    if (lo > 0.0 && meets(lo))
        return lo;
    double step = std::max(hi - lo, kContactTolerance);
    hi = lo + step;
    int guard = 0;
    while (!meets(hi)) {
        lo = hi;
        step *= 2.0;
        hi = lo + step;
        if (++guard > 200)
            throw InvalidArgument("contact_radius: failed to bracket contact");
    }
    for (int it = 0; it < 200 && hi - lo > kContactTolerance; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (meets(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double contact_radius(const PlacedBody& a, const std::optional<Shape>& grow_a, const PlacedBody& b,
                      const std::optional<Shape>& grow_b)
{
    check_dimensions(a, b);
    if (!grow_a && !grow_b)
        return separation(a, b).distance > 0.0 ? kInfinity : 0.0;

    // Growth by balls only: the grown bodies meet exactly when their
    // distance is covered by the summed radii.
    const bool ball_growth = (!grow_a || grow_a->is_ball()) && (!grow_b || grow_b->is_ball());
    if (ball_growth) {
        const double rate = (grow_a ? grow_a->radius() : 0.0) + (grow_b ? grow_b->radius() : 0.0);
        return separation(a, b).distance / rate;
    }

    // A point reached by a growing body around another point: the gauge.
    if (a.scale == 0.0 && b.scale == 0.0) {
        if (grow_a && !grow_b)
            return grow_a->gauge(b.center - a.center);
        if (grow_b && !grow_a)
            return grow_b->gauge(a.center - b.center);
    }
    if (const auto r = polygon_contact_radius(a, grow_a, b, grow_b))
        return *r;
    return detail::contact_radius_bisection(a, grow_a, b, grow_b);
}

// ---------------------------------------------------------------------------
// Planar polygon utilities

double polygon_area(std::span<const Vec> polygon)
{
    double twice = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i)
        twice += cross2(polygon[i], polygon[(i + 1) % polygon.size()]);
    return 0.5 * twice;
}

std::vector<Vec> minkowski_sum(std::span<const Vec> p, std::span<const Vec> q)
{
    if (p.empty() || q.empty())
        throw InvalidArgument("minkowski_sum: empty polygon");
    auto lowest = [](std::span<const Vec> poly) {
        std::size_t k = 0;
        for (std::size_t i = 1; i < poly.size(); ++i)
            if (poly[i].y < poly[k].y || (poly[i].y == poly[k].y && poly[i].x < poly[k].x))
                k = i;
        return k;
    };
    const std::size_t n = p.size(), m = q.size();
    const std::size_t i0 = lowest(p), j0 = lowest(q);
    std::vector<Vec> out;
    out.reserve(n + m);
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        out.push_back(p[(i0 + i) % n] + q[(j0 + j) % m]);
        const Vec ep = p[(i0 + i + 1) % n] - p[(i0 + i) % n];
        const Vec eq = q[(j0 + j + 1) % m] - q[(j0 + j) % m];
        double c = 0.0;
        if (i < n && j < m)
            c = cross2(ep, eq);
        else if (i < n)
            c = 1.0;
        else
            c = -1.0;
        if (c > 0.0)
            ++i;
        else if (c < 0.0)
            ++j;
        else {
            ++i;
            ++j;
        }
    }
    // Drop collinear vertices produced by parallel edges.
    std::vector<Vec> clean;
    clean.reserve(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const Vec& prev = out[(k + out.size() - 1) % out.size()];
        const Vec& next = out[(k + 1) % out.size()];
        if (cross2(out[k] - prev, next - out[k]) != 0.0)
            clean.push_back(out[k]);
    }
    return clean;
}

}  // namespace lily
