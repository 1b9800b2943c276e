// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "commands.hpp"
#include "lilygrow/errors.hpp"

namespace {

constexpr const char* kFooter = R"(Settings are key = value lines (see --config); --set key=value overrides them.
Exit codes: 0 ok, 1 invariant violation, 2 config error, 3 degenerate configuration,
4 regime violation.

Data files:
  grains.csv          id, x, y[, z], t, R, status
  clusters.csv        cluster_id, size, has_doublet, touches_boundary
  tail.csv            t, tail, stderr
  clt_samples.csv     scenario, replicate, statistic, value   (functional, standardized)
  compare_samples.csv scenario, replicate, statistic, value   (mean_R, R, cluster_size, ...)
Every run writes manifest.json; `lilygrow replay manifest.json` reproduces the data files.)";

}  // namespace

int main(int argc, char** argv)
{
    using namespace lily::cli;
    CLI::App app{"Growth-maximal hard-core germ-grain simulation"};
    app.footer(kFooter);
    app.require_subcommand(1);

    std::string config_file;
    std::vector<std::string> overrides;
    std::string out = ".";
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    bool dry_run = false;
    std::string fault;

    struct Flag {
        std::string name;
        std::string key;
        std::string help;
    };
    const std::map<std::string, std::vector<Flag>> flags{
        {"simulate",
         {{"--input", "input", "configuration JSON to build instead of sampling"},
          {"--engine", "engine", "builder or oracle"},
          {"--replicate", "replicate", "replicate index to sample"}}},
        {"verify", {{"--replicates,-M", "replicates", "number of sampled configurations"}}},
        {"clt",
         {{"--n-list", "n_list", "comma separated window sizes n"},
          {"-M", "M", "replicates per window size"},
          {"--functional", "functional", "volume, count or power"}}},
        {"compare", {{"--t-max", "t_max", "upper end of the staggered birth law"}, {"-M", "M", "replicates"}}},
        {"tail",
         {{"--replicates,-M", "replicates", "number of sampled configurations"},
          {"--thresholds", "thresholds", "radii t at which P(U > t) is estimated"}}},
    };
    const std::map<std::string, std::string> descriptions{
        {"simulate", "sample (or load) a configuration and build its growth times"},
        {"verify", "run the invariant battery against the event oracle"},
        {"clt", "Monte Carlo normal approximation of a grain functional"},
        {"compare", "coupled zero-birth and staggered-birth scenarios"},
        {"tail", "empirical tail of the stabilization radius"},
    };

    std::map<std::string, std::string> flag_values;
    std::map<std::string, CLI::App*> subs;
    for (const std::string& name : command_names()) {
        CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
        sub->add_option("--config,-c", config_file, "key = value settings file");
        sub->add_option("--set,-s", overrides, "override a setting, key=value");
        sub->add_option("--out,-o", out, "output directory");
        sub->add_option("--seed", flag_values["seed"], "top-level seed");
        sub->add_option("--workers,-j", workers, "worker threads");
        sub->add_flag("--dry-run", dry_run, "write the manifest only");
        for (const Flag& f : flags.at(name))
            sub->add_option(f.name, flag_values[f.key], f.help);
        if (name == "verify")
            sub->add_option("--inject-fault", fault)->group("");
        subs[name] = sub;
    }
    std::string manifest;
    CLI::App* replay_cmd = app.add_subcommand("replay", "re-run a manifest");
    replay_cmd->add_option("manifest", manifest, "manifest.json of an earlier run")->required();
    replay_cmd->add_option("--out,-o", out, "output directory");
    replay_cmd->add_option("--workers,-j", workers, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    if (replay_cmd->parsed())
        return replay(manifest, out, workers, std::cout, std::cerr);

    RunOptions options;
    for (const auto& [name, sub] : subs)
        if (sub->parsed())
            options.command = name;
    try {
        if (!config_file.empty())
            options.settings = read_settings_file(config_file);
        for (const auto& [key, value] : flag_values)
            if (!value.empty())
                options.settings[key] = value;
        for (const std::string& o : overrides) {
            const auto [key, value] = split_assignment(o);
            options.settings[key] = value;
        }
    } catch (const lily::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
    options.out = out;
    options.workers = workers;
    options.dry_run = dry_run;
    options.fault = fault;
    return run(options, std::cout, std::cerr);
}
