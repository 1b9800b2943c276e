// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace lily {

/// Bad argument to a geometric or model primitive.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A configuration the construction cannot run on (too few grains,
/// coincident germs, non-finite data, mixed dimensions).
class InvalidConfiguration : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input outside the equal-birth, bounded-shape regime required by the
/// stabilization and normal-approximation tooling.
class InvalidRegime : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed scenario file, flag, or serialized document.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace lily
