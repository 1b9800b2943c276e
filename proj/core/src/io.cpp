// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include "lilygrow/io.hpp"

#include <charconv>
#include <ostream>

#include "json.hpp"
#include "lilygrow/errors.hpp"

namespace lily {

using nlohmann::json;

namespace {

json vec_json(const Vec& v, int dimension)
{
    json a = json::array();
    for (int k = 0; k < dimension; ++k)
        a.push_back(v[k]);
    return a;
}

Vec vec_from(const json& a, int dimension, const char* what)
{
    if (!a.is_array() || static_cast<int>(a.size()) != dimension)
        throw ConfigError(std::string(what) + " must be an array of " + std::to_string(dimension) + " numbers");
    Vec v{};
    for (int k = 0; k < dimension; ++k) {
        if (!a[k].is_number())
            throw ConfigError(std::string(what) + " must contain numbers");
        v[k] = a[k].get<double>();
    }
    return v;
}

json shape_json(const Shape& s)
{
    if (s.is_ball()) {
        json j{{"type", "ball"}, {"radius", s.radius()}};
        if (s.dimension() != 2)
            j["dimension"] = s.dimension();
        return j;
    }
    json vertices = json::array();
    for (const Vec& v : s.vertices())
        vertices.push_back({v.x, v.y});
    return {{"type", "polygon"}, {"vertices", vertices}};
}

Shape shape_from(const json& j, int dimension)
{
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "ball")
            return Shape::ball(j.at("radius").get<double>(), j.value("dimension", dimension));
        if (type == "polygon") {
            std::vector<Vec> vertices;
            for (const json& p : j.at("vertices"))
                vertices.push_back(vec_from(p, 2, "polygon vertex"));
            return Shape::polygon(std::move(vertices));
        }
        throw ConfigError("unknown shape type '" + type + "'");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad shape: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("bad shape: ") + e.what());
    }
}

json parse(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

std::string shape_to_json(const Shape& shape)
{
    return shape_json(shape).dump();
}

Shape shape_from_json(std::string_view text)
{
    return shape_from(parse(text), 2);
}

std::string configuration_to_json(const Configuration& config)
{
    const int d = config.dimension;
    json grains = json::array();
    for (const Grain& g : config.grains)
        grains.push_back({{"id", g.id}, {"x", vec_json(g.x, d)}, {"t", g.t}, {"shape", shape_json(g.shape)}});
    json j{{"schema", kConfigurationSchema},
           {"dimension", d},
           {"window", {vec_json(config.window.lo, d), vec_json(config.window.hi, d)}},
           {"grains", grains}};
    return j.dump(2);
}

Configuration configuration_from_json(std::string_view text)
{
    const json j = parse(text);
    Configuration config;
    try {
        config.dimension = j.value("dimension", 2);
        if (config.dimension != 2 && config.dimension != 3)
            throw ConfigError("dimension must be 2 or 3");
        const json& w = j.at("window");
        if (!w.is_array() || w.size() != 2)
            throw ConfigError("window must be [[lo..],[hi..]]");
        config.window.lo = vec_from(w[0], config.dimension, "window corner");
        config.window.hi = vec_from(w[1], config.dimension, "window corner");
        for (const json& g : j.at("grains")) {
            Grain grain;
            grain.id = g.at("id").get<GrainId>();
            grain.x = vec_from(g.at("x"), config.dimension, "grain position");
            grain.t = g.value("t", 0.0);
            grain.shape = g.contains("shape") ? shape_from(g.at("shape"), config.dimension)
                                              : Shape::ball(1.0, config.dimension);
            if (!grain.shape.strictly_convex())
                config.diagnostics.non_strictly_convex = true;
            config.grains.push_back(grain);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad configuration: ") + e.what());
    }
    return config;
}

std::string result_to_json(const HardCoreResult& result)
{
    json grains = json::array();
    for (const GrownGrain& g : result.grains) {
        grains.push_back({{"id", g.grain.id},
                          {"R", g.R},
                          {"status", to_string(g.status)},
                          {"round", g.round},
                          {"earlier_neighbour_ids", g.earlier_neighbour_ids}});
    }
    json j{{"schema", kResultSchema},
           {"engine", result.engine},
           {"dimension", result.dimension},
           {"membership", to_string(result.membership)},
           {"cap_radius", result.cap_radius ? json(*result.cap_radius) : json(nullptr)},
           {"diagnostics",
            {{"tie_detected", result.diagnostics.tie_detected},
             {"non_strictly_convex", result.diagnostics.non_strictly_convex}}},
           {"grains", grains}};
    return j.dump(2);
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_grains_csv(std::ostream& out, const HardCoreResult& result)
{
    static const char* axes[] = {"x", "y", "z"};
    out << "id";
    for (int k = 0; k < result.dimension; ++k)
        out << ',' << axes[k];
    out << ",t,R,status\n";
    for (const GrownGrain& g : result.grains) {
        out << g.grain.id;
        for (int k = 0; k < result.dimension; ++k)
            out << ',' << format_double(g.grain.x[k]);
        out << ',' << format_double(g.grain.t) << ',' << format_double(g.R) << ',' << to_string(g.status) << '\n';
    }
}

void write_clusters_csv(std::ostream& out, const std::vector<Cluster>& clusters)
{
    out << "cluster_id,size,has_doublet,touches_boundary\n";
    for (const Cluster& c : clusters)
        out << c.id << ',' << c.size() << ',' << (c.has_doublet() ? 1 : 0) << ',' << (c.touches_boundary ? 1 : 0)
            << '\n';
}

void write_tail_csv(std::ostream& out, const TailCurve& curve)
{
    out << "t,tail,stderr\n";
    for (const TailPoint& p : curve.points)
        out << format_double(p.t) << ',' << format_double(p.tail) << ',' << format_double(p.standard_error) << '\n';
}

}  // namespace lily
