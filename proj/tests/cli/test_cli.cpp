// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>

#include "battery.hpp"
#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace lily::cli;
using nlohmann::json;

namespace {

struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name)
        : dir(fs::temp_directory_path() / ("lilygrow_cli_" + name + "_" + std::to_string(::getpid())))
    {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Outcome {
    int code;
    std::string log;
    std::string err;
};

Outcome invoke(const std::string& command, Settings settings, const fs::path& out, bool dry_run = false,
               const std::string& fault = {})
{
    RunOptions options;
    options.command = command;
    options.settings = std::move(settings);
    options.out = out;
    options.dry_run = dry_run;
    options.fault = fault;
    std::ostringstream log, err;
    const int code = run(options, log, err);
    return {code, log.str(), err.str()};
}

void write_file(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

std::string line_configuration(std::initializer_list<double> xs)
{
    json grains = json::array();
    int id = 0;
    for (double x : xs)
        grains.push_back({{"id", id++}, {"x", {x, 0.0}}, {"t", 0.0}, {"shape", {{"type", "ball"}, {"radius", 1.0}}}});
    return json{{"schema", "lilygrow.configuration/1"},
                {"dimension", 2},
                {"window", {{-1.0, -1.0}, {30.0, 1.0}}},
                {"grains", grains}}
        .dump();
}

}  // namespace

TEST_CASE("two-grain simulation writes R = distance / 2")
{
    Scratch s("simulate");
    const Outcome o = invoke("simulate", {{"process", "binomial"}, {"count", "2"}, {"seed", "5"}}, s.dir);
    REQUIRE(o.code == kOk);
    const json result = json::parse(slurp(s.dir / "result.json"));
    const json config = json::parse(slurp(s.dir / "configuration.json"));
    REQUIRE(result["grains"].size() == 2);
    const auto& g = config["grains"];
    const double dx = g[0]["x"][0].get<double>() - g[1]["x"][0].get<double>();
    const double dy = g[0]["x"][1].get<double>() - g[1]["x"][1].get<double>();
    const double half = 0.5 * std::hypot(dx, dy);
    CHECK(result["grains"][0]["R"].get<double>() == doctest::Approx(half).epsilon(1e-12));
    CHECK(result["grains"][1]["R"].get<double>() == doctest::Approx(half).epsilon(1e-12));
    CHECK(fs::exists(s.dir / "grains.csv"));
    CHECK(fs::exists(s.dir / "clusters.csv"));
    const json manifest = json::parse(slurp(s.dir / kManifestName));
    CHECK(manifest["schema"] == kManifestSchema);
    CHECK(manifest["command"] == "simulate");
    CHECK(manifest["settings"]["seed"] == "5");
}

TEST_CASE("configuration problems exit with code 2")
{
    Scratch s("config");
    CHECK(invoke("simulate", {{"input", (s.dir / "missing.json").string()}}, s.dir).code == kConfigError);
    CHECK(invoke("simulate", {{"no_such_key", "1"}}, s.dir).code == kConfigError);
    CHECK(invoke("simulate", {{"intensity", "abc"}}, s.dir).code == kConfigError);
    CHECK(invoke("simulate", {{"intensity", "-1"}}, s.dir).code == kConfigError);
}

TEST_CASE("input files: ties warn, single grains are degenerate")
{
    Scratch s("input");
    write_file(s.dir / "tie.json", line_configuration({0, 10, 20}));
    const Outcome tie = invoke("simulate", {{"input", (s.dir / "tie.json").string()}}, s.dir / "tie");
    CHECK(tie.code == kOk);
    CHECK(tie.err.find("warning") != std::string::npos);
    CHECK(json::parse(slurp(s.dir / "tie" / "result.json"))["membership"] == "tie-degenerate");

    write_file(s.dir / "one.json", line_configuration({3}));
    CHECK(invoke("simulate", {{"input", (s.dir / "one.json").string()}}, s.dir / "one").code == kDegenerate);

    const Outcome oracle =
        invoke("simulate", {{"input", (s.dir / "tie.json").string()}, {"engine", "oracle"}}, s.dir / "oracle");
    CHECK(oracle.code == kOk);
    CHECK(json::parse(slurp(s.dir / "oracle" / "result.json"))["engine"] == "oracle");
}

TEST_CASE("verification battery")
{
    Scratch s("verify");
    SUBCASE("default scenario passes")
    {
        const Outcome o = invoke("verify", {{"replicates", "30"}, {"seed", "3"}}, s.dir);
        CHECK(o.code == kOk);
        CHECK(json::parse(slurp(s.dir / "verify.json"))["passed"] == true);
    }
    SUBCASE("injected fault is named")
    {
        const Outcome o = invoke("verify", {{"replicates", "5"}}, s.dir, false, kFaultInflate);
        CHECK(o.code == kViolation);
        CHECK((o.log + o.err).find("hard-core") != std::string::npos);
    }
    SUBCASE("zero replicates pass vacuously")
    {
        const Outcome o = invoke("verify", {{"replicates", "0"}}, s.dir);
        CHECK(o.code == kOk);
        CHECK(o.err.find("warning") != std::string::npos);
    }
}

TEST_CASE("battery tallies")
{
    lily::ScenarioSpec spec;
    spec.birth = lily::BirthLaw::uniform;
    spec.seed = 4;
    const BatteryReport report = run_battery(spec, 10, 1);
    CHECK(report.passed());
    CHECK(report.replicates == 10);
    const InvariantTally* hard = report.find("hard-core");
    REQUIRE(hard != nullptr);
    CHECK(hard->checked > 0);
    CHECK(report.find("no-such-invariant") == nullptr);
}

TEST_CASE("CLT command")
{
    Scratch s("clt");
    CHECK(invoke("clt", {{"birth", "uniform"}}, s.dir / "bad").code == kRegimeViolation);

    const Outcome dry = invoke("clt", {{"M", "20"}, {"n_list", "25"}}, s.dir / "dry", true);
    CHECK(dry.code == kOk);
    CHECK(fs::exists(s.dir / "dry" / kManifestName));
    CHECK_FALSE(fs::exists(s.dir / "dry" / "clt.json"));

    const Outcome o = invoke("clt", {{"M", "20"}, {"n_list", "25,50"}, {"functional", "count"}}, s.dir / "run");
    CHECK(o.code == kOk);
    const json report = json::parse(slurp(s.dir / "run" / "clt.json"));
    CHECK(report["levels"].size() == 2);
    CHECK(slurp(s.dir / "run" / "clt_samples.csv").rfind("scenario,replicate,statistic,value", 0) == 0);
}

TEST_CASE("compare command")
{
    Scratch s("compare");
    const Outcome one = invoke("compare", {{"M", "1"}, {"window", "0 0 6 6"}}, s.dir / "one");
    CHECK(one.code == kOk);
    const std::string csv = slurp(s.dir / "one" / "compare_samples.csv");
    CHECK(csv.find(",1,") == std::string::npos);
    CHECK(csv.find(",0,") != std::string::npos);

    const Outcome flat = invoke("compare", {{"M", "3"}, {"t_max", "0"}, {"window", "0 0 6 6"}}, s.dir / "flat");
    CHECK(flat.code == kOk);
    CHECK(json::parse(slurp(s.dir / "flat" / "compare.json"))["mean_difference"].get<double>() == 0.0);
}

TEST_CASE("replay reproduces every data file")
{
    Scratch s("replay");
    const Outcome first =
        invoke("compare", {{"M", "4"}, {"window", "0 0 8 8"}, {"seed", "99"}}, s.dir / "first");
    REQUIRE(first.code == kOk);
    std::ostringstream log, err;
    REQUIRE(replay(s.dir / "first" / kManifestName, s.dir / "second", 1, log, err) == kOk);
    for (const char* name : {"compare.json", "compare_samples.csv"})
        CHECK(slurp(s.dir / "first" / name) == slurp(s.dir / "second" / name));
}
