// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "battery.hpp"
#include "json.hpp"
#include "lilygrow/analysis.hpp"
#include "lilygrow/errors.hpp"
#include "lilygrow/io.hpp"
#include "lilygrow/oracle.hpp"
#include "lilygrow/sampling.hpp"
#include "lilygrow/stats.hpp"

#ifndef LILYGROW_VERSION
#define LILYGROW_VERSION "unknown"
#endif

namespace lily::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::map<std::string, Settings>& all_command_defaults()
{
    static const std::map<std::string, Settings> table{
        {"simulate", {{"input", ""}, {"engine", "builder"}, {"replicate", "0"}}},
        {"verify", {{"replicates", "100"}}},
        {"clt", {{"n_list", "100,400"}, {"M", "500"}}},
        {"compare", {{"M", "200"}}},
        {"tail", {{"replicates", "200"}, {"thresholds", "0 1 2 3 4 5 6 7 8 9 10"}, {"chain_budget", "100000"}}},
    };
    return table;
}

bool uses_functional(const std::string& command)
{
    return command == "clt";
}

std::string timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::ostringstream s;
    s << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

class Outputs {
  public:
    explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}

    std::ofstream open(const std::string& name)
    {
        std::ofstream out(dir_ / name, std::ios::binary);
        if (!out)
            throw ConfigError("cannot write '" + (dir_ / name).string() + "'");
        files_.push_back(name);
        return out;
    }

    void write(const std::string& name, const std::string& text) { open(name) << text; }

    const std::vector<std::string>& files() const { return files_; }
    const fs::path& dir() const { return dir_; }

  private:
    fs::path dir_;
    std::vector<std::string> files_;
};

json with_manifest(json j)
{
    j["manifest"] = kManifestName;
    return j;
}

void long_row(std::ostream& out, const std::string& scenario, std::size_t replicate, const char* statistic,
              double value)
{
    out << scenario << ',' << replicate << ',' << statistic << ',' << format_double(value) << '\n';
}

int cmd_simulate(const Settings& s, Outputs& out, std::ostream& log, std::ostream& err)
{
    Configuration config;
    const std::string input = s.at("input");
    if (!input.empty()) {
        std::ifstream in(input);
        if (!in)
            throw ConfigError("cannot read configuration '" + input + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        config = configuration_from_json(buffer.str());
    } else {
        config = sample(scenario_from_settings(s), get_uint64(s, "replicate"));
    }
    if (config.grains.size() < 2)
        throw InvalidConfiguration("the configuration has " + std::to_string(config.grains.size()) +
                                   " grains; at least two are needed");
    const std::string engine = s.at("engine");
    HardCoreResult result;
    if (engine == "builder")
        result = build(config);
    else if (engine == "oracle")
        result = simulate_growth(config);
    else
        throw ConfigError("setting 'engine' must be builder|oracle");

    if (result.membership == Membership::tie_degenerate)
        err << "warning: coinciding contact times; ties were broken by id order\n";
    if (result.cap_radius)
        err << "warning: one grain had no positive stopper and was capped\n";

    out.write("configuration.json", configuration_to_json(config) + "\n");
    json r = json::parse(result_to_json(result));
    out.write("result.json", with_manifest(r).dump(2) + "\n");
    {
        auto f = out.open("grains.csv");
        write_grains_csv(f, result);
    }
    {
        auto f = out.open("clusters.csv");
        write_clusters_csv(f, clusters(neighbour_graph(result)));
    }
    log << "simulated " << config.grains.size() << " grains with the " << engine << " (" << to_string(result.membership)
        << ")\n";
    return kOk;
}

int cmd_verify(const Settings& s, const std::string& fault, unsigned workers, Outputs& out, std::ostream& log,
               std::ostream& err)
{
    const ScenarioSpec spec = scenario_from_settings(s);
    const auto M = static_cast<std::size_t>(get_uint64(s, "replicates"));
    if (M == 0)
        err << "warning: zero replicates; nothing was checked\n";
    const BatteryReport report = run_battery(spec, M, workers, fault);

    json invariants = json::array();
    for (const auto& t : report.invariants) {
        invariants.push_back({{"name", t.name},
                              {"asserted", t.asserted},
                              {"checked", t.checked},
                              {"failed", t.failed},
                              {"first_failure", t.first_failure}});
        if (t.failed > 0)
            (t.asserted ? err : log) << (t.asserted ? "violation: " : "note: ") << t.name << ": " << t.failed
                                     << " of " << t.checked << " (" << t.first_failure << ")\n";
    }
    json j{{"schema", "lilygrow.verify/1"},
           {"replicates", report.replicates},
           {"too_small", report.too_small},
           {"tie_degenerate", report.tie_degenerate},
           {"capped", report.capped},
           {"max_R_difference", report.max_R_difference},
           {"max_relative_penetration", report.max_relative_penetration},
           {"passed", report.passed()},
           {"invariants", invariants}};
    out.write("verify.json", with_manifest(j).dump(2) + "\n");
    log << (report.passed() ? "all invariants hold" : "invariant violated") << " over " << report.replicates
        << " replicates\n";
    return report.passed() ? kOk : kViolation;
}

int cmd_clt(const Settings& s, unsigned workers, Outputs& out, std::ostream& log, std::ostream& err)
{
    const ScenarioSpec spec = scenario_from_settings(s);
    const FunctionalSpec functional = functional_from_settings(s);
    const auto n_list = get_doubles(s, "n_list");
    const auto M = static_cast<std::size_t>(get_uint64(s, "M"));
    const CltReport report = clt_experiment(spec, functional, n_list, M, spec.seed, workers);
    if (report.ks_indeterminate)
        err << "warning: the functional is degenerate; the normality gate is indeterminate\n";

    json levels = json::array();
    auto csv = out.open("clt_samples.csv");
    csv << "scenario,replicate,statistic,value\n";
    for (const CltLevel& l : report.levels) {
        levels.push_back({{"n", l.n},
                          {"mean", l.mean},
                          {"variance", l.variance},
                          {"variance_over_n", l.variance_over_n},
                          {"standardized_mean", l.standardized_mean},
                          {"ks", l.ks},
                          {"capped", l.capped}});
        const std::string scenario = "n=" + format_double(l.n);
        for (std::size_t r = 0; r < l.samples.size(); ++r) {
            long_row(csv, scenario, r, "functional", l.samples[r]);
            long_row(csv, scenario, r, "standardized", l.standardized[r]);
        }
    }
    json j{{"schema", "lilygrow.clt/1"},
           {"replicates", report.replicates},
           {"seed", report.seed},
           {"sigma_hat", report.sigma_hat},
           {"ks_indeterminate", report.ks_indeterminate},
           {"levels", levels}};
    out.write("clt.json", with_manifest(j).dump(2) + "\n");
    for (const CltLevel& l : report.levels)
        log << "n=" << l.n << " mean=" << l.mean << " variance/n=" << l.variance_over_n << " ks=" << l.ks << "\n";
    return kOk;
}

json quantile_json(const Quantiles& q)
{
    return {{"q05", q.q05}, {"q25", q.q25}, {"q50", q.q50}, {"q75", q.q75}, {"q95", q.q95}};
}

int cmd_compare(const Settings& s, unsigned workers, Outputs& out, std::ostream& log)
{
    const ScenarioSpec spec = scenario_from_settings(s);
    const auto M = static_cast<std::size_t>(get_uint64(s, "M"));
    const CompareReport report = compare_scenarios(spec, spec.t_max, M, workers);

    auto csv = out.open("compare_samples.csv");
    csv << "scenario,replicate,statistic,value\n";
    for (std::size_t r = 0; r < report.replicates.size(); ++r) {
        const PairedReplicate& p = report.replicates[r];
        long_row(csv, "A", r, "mean_R", p.mean_R_a);
        long_row(csv, "B", r, "mean_R", p.mean_R_b);
        long_row(csv, "A", r, "mean_cluster_size", p.mean_cluster_a);
        long_row(csv, "B", r, "mean_cluster_size", p.mean_cluster_b);
        long_row(csv, "B", r, "covered_fraction", p.covered_fraction_b);
        for (double v : p.R_a)
            long_row(csv, "A", r, "R", v);
        for (double v : p.R_b)
            long_row(csv, "B", r, "R", v);
        for (double v : p.clusters_a)
            long_row(csv, "A", r, "cluster_size", v);
        for (double v : p.clusters_b)
            long_row(csv, "B", r, "cluster_size", v);
    }
    json j{{"schema", "lilygrow.compare/1"},
           {"t_max", report.t_max},
           {"replicates", report.replicates.size()},
           {"covered_fraction_b", report.covered_fraction_b},
           {"mean_difference", report.mean_difference},
           {"difference_se", report.difference_se},
           {"z", std::isfinite(report.z) ? json(report.z) : json(nullptr)},
           {"b_larger_at_99", report.b_larger},
           {"quantiles_a", quantile_json(report.quantiles_a)},
           {"quantiles_b", quantile_json(report.quantiles_b)}};
    out.write("compare.json", with_manifest(j).dump(2) + "\n");
    log << "covered fraction (staggered) " << report.covered_fraction_b << ", mean R difference "
        << report.mean_difference << " (z = " << report.z << ")\n";
    return kOk;
}

int cmd_tail(const Settings& s, Outputs& out, std::ostream& log)
{
    ScenarioSpec spec = scenario_from_settings(s);
    spec.regime = true;
    validate(spec);
    const auto thresholds = get_doubles(s, "thresholds");
    const TailCurve curve = tail_curve_U(spec, static_cast<std::size_t>(get_uint64(s, "replicates")), thresholds,
                                         static_cast<std::size_t>(get_uint64(s, "chain_budget")));
    {
        auto f = out.open("tail.csv");
        write_tail_csv(f, curve);
    }
    json j{{"schema", "lilygrow.tail/1"},
           {"replicates", curve.replicates},
           {"truncated", curve.truncated},
           {"log_slope", curve.log_slope},
           {"nonincreasing", curve.nonincreasing()}};
    out.write("tail.json", with_manifest(j).dump(2) + "\n");
    log << "tail curve over " << curve.replicates << " replicates, log slope " << curve.log_slope << "\n";
    return kOk;
}

void write_manifest(const RunOptions& options, const Settings& resolved, const Outputs& out)
{
    json settings = json::object();
    for (const auto& [k, v] : resolved)
        settings[k] = v;
    json j{{"schema", kManifestSchema},
           {"command", options.command},
           {"tool_version", LILYGROW_VERSION},
           {"created", timestamp()},
           {"settings", settings},
           {"outputs", out.files()}};
    std::ofstream f(out.dir() / kManifestName, std::ios::binary);
    if (!f)
        throw ConfigError("cannot write manifest in '" + out.dir().string() + "'");
    f << j.dump(2) << "\n";
}

}  // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, defaults] : all_command_defaults())
            out.push_back(name);
        return out;
    }();
    return names;
}

const Settings& command_defaults(const std::string& command)
{
    const auto& table = all_command_defaults();
    const auto it = table.find(command);
    if (it == table.end())
        throw ConfigError("unknown command '" + command + "'");
    return it->second;
}

Settings resolve(const std::string& command, const Settings& given)
{
    Settings out = scenario_defaults();
    if (uses_functional(command))
        out.insert(functional_defaults().begin(), functional_defaults().end());
    for (const auto& [k, v] : command_defaults(command))
        out[k] = v;
    for (const auto& [k, v] : given) {
        if (!out.count(k))
            throw ConfigError("unknown setting '" + k + "' for command '" + command + "'");
        out[k] = v;
    }
    return out;
}

int run(const RunOptions& options, std::ostream& log, std::ostream& err)
{
    try {
        const Settings s = resolve(options.command, options.settings);
        fs::create_directories(options.out);
        Outputs out(options.out);
        int code = kOk;
        if (!options.dry_run) {
            if (options.command == "simulate")
                code = cmd_simulate(s, out, log, err);
            else if (options.command == "verify")
                code = cmd_verify(s, options.fault, options.workers, out, log, err);
            else if (options.command == "clt")
                code = cmd_clt(s, options.workers, out, log, err);
            else if (options.command == "compare")
                code = cmd_compare(s, options.workers, out, log);
            else if (options.command == "tail")
                code = cmd_tail(s, out, log);
        } else {
            // Still reject bad scenarios and regimes without running anything.
            ScenarioSpec spec = scenario_from_settings(s);
            if (options.command == "clt" || options.command == "tail") {
                spec.regime = true;
                validate(spec);
            }
            if (uses_functional(options.command))
                functional_from_settings(s);
            log << "dry run: manifest only\n";
        }
        write_manifest(options, s, out);
        return code;
    } catch (const InvalidRegime& e) {
        err << "error: " << e.what() << "\n";
        return kRegimeViolation;
    } catch (const InvalidConfiguration& e) {
        err << "error: " << e.what() << "\n";
        return kDegenerate;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
}

int replay(const fs::path& manifest, const fs::path& out, unsigned workers, std::ostream& log, std::ostream& err)
{
    std::ifstream in(manifest);
    if (!in) {
        err << "error: cannot read manifest '" << manifest.string() << "'\n";
        return kConfigError;
    }
    RunOptions options;
    try {
        const json j = json::parse(in);
        if (j.value("schema", "") != kManifestSchema)
            throw ConfigError("not a lilygrow manifest");
        options.command = j.at("command").get<std::string>();
        for (const auto& [k, v] : j.at("settings").items())
            options.settings[k] = v.get<std::string>();
    } catch (const json::exception& e) {
        err << "error: bad manifest: " << e.what() << "\n";
        return kConfigError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
    options.out = out;
    options.workers = workers;
    return run(options, log, err);
}

}  // namespace lily::cli
