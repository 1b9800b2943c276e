// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "lilygrow/model.hpp"

namespace lily {

enum class GermProcess { poisson, binomial };
enum class BirthLaw { constant, uniform, exponential };
enum class ShapeLaw {
    unit_ball,        ///< every grain is B^d
    random_ball,      ///< radius uniform on [1, c]
    regular_polygon,  ///< regular m-gon with inradius 1
    fixed_polygon,    ///< the polygon given in `polygon_vertices`
};

/// Independently marked germ process in a box.
struct ScenarioSpec {
    int dimension = 2;
    Box window{{0.0, 0.0, 0.0}, {10.0, 10.0, 0.0}};

    GermProcess process = GermProcess::poisson;
    double intensity = 1.0;
    int count = 2;  ///< binomial only

    BirthLaw birth = BirthLaw::constant;
    double birth_value = 0.0;  ///< constant law
    double t_max = 10.0;       ///< uniform law on [0, t_max]
    double birth_rate = 1.0;   ///< exponential law

    ShapeLaw shape = ShapeLaw::unit_ball;
    double c = 1.0;          ///< outer bound: every shape lies in c B^d
    int polygon_sides = 4;
    bool random_rotation = true;
    std::vector<Vec> polygon_vertices;

    /// Require births = 0 and B^d within every shape within c B^d.
    bool regime = false;
    std::uint64_t seed = 1;
};

/// Counter-based stream indices. Count, positions and shapes never depend
/// on the birth law, so two specs differing only in births are coupled.
enum class Stream : std::uint32_t { count = 0, positions = 1, births = 2, shapes = 3 };

/// Throws InvalidArgument for degenerate windows or law parameters and
/// InvalidRegime when `regime` is set but the laws violate it.
void validate(const ScenarioSpec& spec);

/// Germs closer than this are rejected and redrawn.
inline constexpr double kMinGermDistance = 1e-9;

/// Draw replicate `replicate` of the scenario. A pure function of
/// (spec, replicate); ids are 0..n-1 in draw order.
Configuration sample(const ScenarioSpec& spec, std::uint64_t replicate = 0);

const char* to_string(GermProcess p);
const char* to_string(BirthLaw b);
const char* to_string(ShapeLaw s);

}  // namespace lily
