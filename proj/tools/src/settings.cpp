// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include "settings.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lilygrow/errors.hpp"

namespace lily::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

const std::string& lookup(const Settings& s, const std::string& key)
{
    const auto it = s.find(key);
    if (it == s.end())
        throw ConfigError("missing setting '" + key + "'");
    return it->second;
}

std::vector<std::string> tokens(std::string_view text, std::string_view separators)
{
    std::vector<std::string> out;
    std::string current;
    for (char ch : text) {
        if (separators.find(ch) != std::string_view::npos) {
            if (!current.empty())
                out.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    if (!current.empty())
        out.push_back(current);
    return out;
}

double to_double(const std::string& key, const std::string& text)
{
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ConfigError("setting '" + key + "': '" + text + "' is not a number");
    return v;
}

template <class Enum, std::size_t N>
Enum choose(const Settings& s, const std::string& key, const std::pair<const char*, Enum> (&options)[N])
{
    const std::string& value = lookup(s, key);
    for (const auto& [name, e] : options)
        if (value == name)
            return e;
    std::string allowed;
    for (const auto& option : options)
        allowed += std::string(allowed.empty() ? "" : "|") + option.first;
    throw ConfigError("setting '" + key + "' must be one of " + allowed + ", got '" + value + "'");
}

Settings with_defaults(const Settings& defaults, const Settings& given)
{
    Settings out = defaults;
    for (const auto& [k, v] : given)
        if (defaults.count(k))
            out[k] = v;
    return out;
}

}  // namespace

Settings parse_key_values(std::string_view text)
{
    Settings out;
    std::istringstream in{std::string(text)};
    std::string line;
    for (int number = 1; std::getline(in, line); ++number) {
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(number) + ": expected key = value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        if (key.empty())
            throw ConfigError("line " + std::to_string(number) + ": empty key");
        out[key] = trim(std::string_view(body).substr(eq + 1));
    }
    return out;
}

Settings read_settings_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_key_values(buffer.str());
}

std::pair<std::string, std::string> split_assignment(std::string_view text)
{
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("expected key=value, got '" + std::string(text) + "'");
    return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

const Settings& scenario_defaults()
{
    static const Settings defaults{
        {"dimension", "2"},       {"window", "0 0 10 10"},    {"process", "poisson"},
        {"intensity", "1"},       {"count", "2"},             {"birth", "constant"},
        {"birth_value", "0"},     {"t_max", "10"},            {"birth_rate", "1"},
        {"shape", "unit_ball"},   {"c", "1"},                 {"polygon_sides", "4"},
        {"random_rotation", "true"}, {"polygon", ""},         {"regime", "false"},
        {"seed", "1"},
    };
    return defaults;
}

const Settings& functional_defaults()
{
    static const Settings defaults{
        {"functional", "volume"}, {"alpha", "1"},        {"beta", "1"},
        {"weight", "constant"},   {"weight_value", "1"}, {"weight_box", "-0.25 -0.25 0.25 0.25"},
        {"weight_coefficients", ""},
    };
    return defaults;
}

double get_double(const Settings& s, const std::string& key)
{
    return to_double(key, lookup(s, key));
}

long long get_int(const Settings& s, const std::string& key)
{
    const std::string& text = lookup(s, key);
    long long v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ConfigError("setting '" + key + "': '" + text + "' is not an integer");
    return v;
}

std::uint64_t get_uint64(const Settings& s, const std::string& key)
{
    const std::string& text = lookup(s, key);
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ConfigError("setting '" + key + "': '" + text + "' is not an unsigned integer");
    return v;
}

bool get_bool(const Settings& s, const std::string& key)
{
    std::string v = lookup(s, key);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    throw ConfigError("setting '" + key + "': '" + v + "' is not a boolean");
}

std::vector<double> get_doubles(const Settings& s, const std::string& key)
{
    std::vector<double> out;
    for (const std::string& t : tokens(lookup(s, key), " ,\t"))
        out.push_back(to_double(key, t));
    return out;
}

ScenarioSpec scenario_from_settings(const Settings& given)
{
    const Settings s = with_defaults(scenario_defaults(), given);
    ScenarioSpec spec;
    spec.dimension = static_cast<int>(get_int(s, "dimension"));
    const auto window = get_doubles(s, "window");
    if (window.size() != 2 * static_cast<std::size_t>(spec.dimension))
        throw ConfigError("setting 'window' needs " + std::to_string(2 * spec.dimension) + " numbers (lo then hi)");
    for (int k = 0; k < spec.dimension; ++k) {
        spec.window.lo[k] = window[k];
        spec.window.hi[k] = window[spec.dimension + k];
    }
    spec.process = choose(s, "process", {std::pair{"poisson", GermProcess::poisson}, {"binomial", GermProcess::binomial}});
    spec.intensity = get_double(s, "intensity");
    spec.count = static_cast<int>(get_int(s, "count"));
    spec.birth = choose(s, "birth", {std::pair{"constant", BirthLaw::constant}, {"uniform", BirthLaw::uniform},
                                     {"exponential", BirthLaw::exponential}});
    spec.birth_value = get_double(s, "birth_value");
    spec.t_max = get_double(s, "t_max");
    spec.birth_rate = get_double(s, "birth_rate");
    spec.shape = choose(s, "shape", {std::pair{"unit_ball", ShapeLaw::unit_ball}, {"random_ball", ShapeLaw::random_ball},
                                     {"regular_polygon", ShapeLaw::regular_polygon},
                                     {"fixed_polygon", ShapeLaw::fixed_polygon}});
    spec.c = get_double(s, "c");
    spec.polygon_sides = static_cast<int>(get_int(s, "polygon_sides"));
    spec.random_rotation = get_bool(s, "random_rotation");
    for (const std::string& vertex : tokens(lookup(s, "polygon"), ";")) {
        const auto xy = tokens(vertex, " ,\t");
        if (xy.size() != 2)
            throw ConfigError("setting 'polygon': each vertex needs two coordinates");
        spec.polygon_vertices.push_back({to_double("polygon", xy[0]), to_double("polygon", xy[1]), 0.0});
    }
    spec.regime = get_bool(s, "regime");
    spec.seed = get_uint64(s, "seed");
    try {
        validate(spec);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    return spec;
}

FunctionalSpec functional_from_settings(const Settings& given)
{
    const Settings s = with_defaults(functional_defaults(), given);
    FunctionalSpec f;
    f.h = choose(s, "functional", {std::pair{"volume", HKind::volume}, {"count", HKind::count}, {"power", HKind::power}});
    f.alpha = get_double(s, "alpha");
    f.beta = get_double(s, "beta");
    f.weight = choose(s, "weight", {std::pair{"constant", WeightKind::constant}, {"indicator", WeightKind::indicator},
                                    {"polynomial", WeightKind::polynomial}});
    f.value = get_double(s, "weight_value");
    const auto box = get_doubles(s, "weight_box");
    if (box.size() != 4 && box.size() != 6)
        throw ConfigError("setting 'weight_box' needs 4 or 6 numbers (lo then hi)");
    const std::size_t d = box.size() / 2;
    for (std::size_t k = 0; k < d; ++k) {
        f.box.lo[static_cast<int>(k)] = box[k];
        f.box.hi[static_cast<int>(k)] = box[d + k];
    }
    for (const std::string& axis : tokens(lookup(s, "weight_coefficients"), ";")) {
        std::vector<double> row;
        for (const std::string& t : tokens(axis, " ,\t"))
            row.push_back(to_double("weight_coefficients", t));
        f.coefficients.push_back(row);
    }
    if (f.h == HKind::power && !(f.alpha >= 0.0 && f.beta >= 0.0))
        throw ConfigError("power functional needs alpha >= 0 and beta >= 0");
    return f;
}

}  // namespace lily::cli
