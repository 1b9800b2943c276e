// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "settings.hpp"

namespace lily::cli {

enum ExitCode : int {
    kOk = 0,
    kViolation = 1,
    kConfigError = 2,
    kDegenerate = 3,
    kRegimeViolation = 4,
};

inline constexpr const char* kManifestSchema = "lilygrow.manifest/1";
inline constexpr const char* kManifestName = "manifest.json";

const std::vector<std::string>& command_names();

/// Command-specific keys and their defaults.
const Settings& command_defaults(const std::string& command);

/// Fills in defaults for every key the command understands. Throws
/// ConfigError for unknown commands or keys.
Settings resolve(const std::string& command, const Settings& given);

struct RunOptions {
    std::string command;
    Settings settings;  ///< unresolved; defaults are filled in by run()
    std::filesystem::path out = ".";
    unsigned workers = 1;
    bool dry_run = false;
    /// Test hook for `verify`; see battery.hpp.
    std::string fault;
};

/// Runs a command, writes its data files and manifest into `options.out`,
/// and maps failures to exit codes. Progress goes to `log`, problems to `err`.
int run(const RunOptions& options, std::ostream& log, std::ostream& err);

/// Re-runs the command recorded in a manifest, writing into `out`.
int replay(const std::filesystem::path& manifest, const std::filesystem::path& out, unsigned workers,
           std::ostream& log, std::ostream& err);

}  // namespace lily::cli
