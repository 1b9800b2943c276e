// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lilygrow/analysis.hpp"
#include "lilygrow/builder.hpp"

namespace lily {

/// Version tag written into every JSON document as "schema".
inline constexpr const char* kResultSchema = "lilygrow.result/1";
inline constexpr const char* kConfigurationSchema = "lilygrow.configuration/1";

/// {"type":"ball","radius":r[,"dimension":3]} or {"type":"polygon","vertices":[[x,y],..]}.
std::string shape_to_json(const Shape& shape);
Shape shape_from_json(std::string_view text);

/// {"dimension":d,"window":[[lo..],[hi..]],"grains":[{"id","x","t","shape"},..]}.
/// Reading throws ConfigError for malformed documents.
std::string configuration_to_json(const Configuration& config);
Configuration configuration_from_json(std::string_view text);

/// Engine, membership, cap and per-grain {id, R, status, round,
/// earlier_neighbour_ids}.
std::string result_to_json(const HardCoreResult& result);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

/// id, x, y[, z], t, R, status
void write_grains_csv(std::ostream& out, const HardCoreResult& result);
/// cluster_id, size, has_doublet, touches_boundary
void write_clusters_csv(std::ostream& out, const std::vector<Cluster>& clusters);
/// t, tail, stderr
void write_tail_csv(std::ostream& out, const TailCurve& curve);

}  // namespace lily
