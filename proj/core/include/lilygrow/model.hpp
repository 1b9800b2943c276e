// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lilygrow/geometry.hpp"

namespace lily {

using GrainId = std::int64_t;

/// Axis-aligned observation window.
struct Box {
    Vec lo;
    Vec hi;

    double volume(int dimension) const;
    double diameter() const { return norm(hi - lo); }
    Vec center() const { return 0.5 * (lo + hi); }
    bool contains(const Vec& p, int dimension) const;
    friend bool operator==(const Box&, const Box&) = default;
};

/// A germ x with birth time t and growth shape K. Without interaction the
/// grain occupies x + (tau - t) K at time tau >= t.
struct Grain {
    GrainId id = 0;
    Vec x;
    double t = 0.0;
    Shape shape = Shape::ball(1.0);

    PlacedBody body(double growth) const { return {x, growth, shape}; }
};

enum class GrainStatus {
    stopped,  ///< grew for R > 0 and was stopped by a witness
    covered,  ///< germ reached before (or at) its birth, R = 0
    capped,   ///< no positive grain could ever stop it; R is an artificial cap
};

const char* to_string(GrainStatus status);

struct GrownGrain {
    Grain grain;
    double R = 0.0;
    GrainStatus status = GrainStatus::stopped;
    /// Construction round that fixed R; -1 for the final leftover grain.
    int round = -1;
    std::vector<GrainId> earlier_neighbour_ids;

    double stop_time() const { return grain.t + R; }
    PlacedBody body() const { return grain.body(R); }
};

struct Diagnostics {
    /// Two distinct candidate events or distances coincided within 1e-12.
    bool tie_detected = false;
    /// Some shape is a polygon, so uniqueness of earlier neighbours is not guaranteed.
    bool non_strictly_convex = false;
};

/// A finite marked configuration in a window.
struct Configuration {
    int dimension = 2;
    Box window;
    std::vector<Grain> grains;
    Diagnostics diagnostics;
};

/// Throws InvalidConfiguration for non-finite data, negative births, mixed
/// dimensions, duplicate ids or coincident germs.
void validate(const Configuration& config);
Configuration translated(const Configuration& config, const Vec& shift);

/// Which branch of the first-contact rule applies.
enum class ContactKind {
    meet,                 ///< both grains grow and touch
    first_covers_second,  ///< the first argument reaches the other germ by its birth
    second_covers_first,
};

struct FirstContact {
    double time = 0.0;
    ContactKind kind = ContactKind::meet;
    /// Gauge distance from the earlier-born germ to the later germ, minus
    /// the birth gap. Values near zero signal a coverage/meet tie.
    double coverage_margin = 0.0;
};

/// First contact time d(u, v) together with the branch taken. Symmetric in
/// its arguments: the computation always runs in a canonical order.
FirstContact first_contact(const Grain& u, const Grain& v);
double first_contact_time(const Grain& u, const Grain& v);

/// Absolute time at which u, growing from its birth, touches the frozen body
/// y + R L. Requires R > 0.
double stop_time_against_frozen(const Grain& u, const GrownGrain& v);
double stop_time_against_frozen(const Grain& u, const Grain& v, double v_growth);

/// Smallest r with x + rK covering the whole window, doubled.
double cap_radius(const Grain& g, const Box& window, int dimension);

}  // namespace lily
