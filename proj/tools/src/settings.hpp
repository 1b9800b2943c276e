// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lilygrow/sampling.hpp"
#include "lilygrow/stats.hpp"

namespace lily::cli {

/// Flat key=value settings. Ordered so serialization is stable.
using Settings = std::map<std::string, std::string>;

/// Parses `key = value` lines; '#' starts a comment. Throws ConfigError
/// naming the offending line.
Settings parse_key_values(std::string_view text);
/// Throws ConfigError when the file cannot be read.
Settings read_settings_file(const std::filesystem::path& path);
/// Parses "key=value" as given on the command line.
std::pair<std::string, std::string> split_assignment(std::string_view text);

/// Keys describing the germ process and its marks, with defaults.
const Settings& scenario_defaults();
/// Keys of the h-functional, with defaults.
const Settings& functional_defaults();

ScenarioSpec scenario_from_settings(const Settings& settings);
FunctionalSpec functional_from_settings(const Settings& settings);

double get_double(const Settings& s, const std::string& key);
long long get_int(const Settings& s, const std::string& key);
std::uint64_t get_uint64(const Settings& s, const std::string& key);
bool get_bool(const Settings& s, const std::string& key);
std::vector<double> get_doubles(const Settings& s, const std::string& key);

}  // namespace lily::cli
