// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "hyperball/experiments.hpp"
#include "json.hpp"

using namespace hyperball;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + HYPERBALL_CLI + "\" " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    while (std::fgets(buf, sizeof buf, p)) r.out += buf;
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("hyperball_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

json read_json(const fs::path& p) {
    std::ifstream is(p);
    return json::parse(is);
}

}  // namespace

TEST_CASE("unknown keys are config errors that name the key") {
    const Run r = run_cli("run --set frame.bogus=1 --out " + scratch("unknown").string());
    CHECK(r.status == 2);
    CHECK(r.out.find("frame.bogus") != std::string::npos);
    const Run t = run_cli("run --set nonsense=3");
    CHECK(t.status == 2);
    CHECK(t.out.find("nonsense") != std::string::npos);
}

TEST_CASE("bad values and types are config errors") {
    CHECK(run_cli("run --set experiment=nope").status == 2);
    CHECK(run_cli("run --set ball_grid.N_t=\\\"many\\\"").status == 2);
    CHECK(run_cli("run --threads 0").status == 2);
    CHECK(run_cli("run --config /nonexistent/c.json").status == 2);
    CHECK(run_cli("frobnicate").status == 2);
}

TEST_CASE("config parsing in-process") {
    const json d = default_config_json();
    const ExperimentConfig c = parse_config(d);
    CHECK(config_to_json(c) == d);
    json j = json::object();
    apply_override(j, "frame.deltas=[0.5]");
    apply_override(j, "frame.hs=[0.5]");
    apply_override(j, "experiment=nterm");
    const ExperimentConfig e = parse_config(j);
    CHECK(e.experiment == "nterm");
    CHECK(e.frame.deltas == std::vector<double>{0.5});
    CHECK_THROWS_AS(apply_override(j, "novalue"), ConfigError);
    json bad = {{"schur", {{"grid", {{"T_max", 2.0}, {"N_t", 10}, {"N_theta", 10}, {"extra", 1}}}}}};
    try {
        parse_config(bad);
        CHECK(false);
    } catch (const ConfigError& err) {
        CHECK(std::string(err.what()).find("schur.grid.extra") != std::string::npos);
    }
}

TEST_CASE("defaults command matches the in-process defaults") {
    const Run r = run_cli("defaults");
    CHECK(r.status == 0);
    CHECK(json::parse(r.out) == default_config_json());
    // the checked-in copy is current
    CHECK(read_json(fs::path(HYPERBALL_FIXTURE_DIR) / ".." / ".." / "defaults.json") == default_config_json());
}

TEST_CASE("a small nterm run writes a well-formed report, deterministically") {
    const fs::path a = scratch("nterm_a"), b = scratch("nterm_b");
    const std::string args = " --set experiment=nterm --set nterm.sequences=10 --set nterm.length=100 --threads 1";
    const Run ra = run_cli("run" + args + " --out " + a.string());
    const Run rb = run_cli("run" + args + " --out " + b.string());
    CHECK(ra.status == 0);
    CHECK(rb.status == 0);
    const json ja = read_json(a / "nterm_report.json"), jb = read_json(b / "nterm_report.json");
    for (const char* k : {"experiment", "config_echo", "metrics", "assertions", "wall_time_s"}) CHECK(ja.contains(k));
    CHECK(ja["experiment"] == "nterm");
    CHECK(ja["config_echo"]["nterm"]["length"] == 100);
    for (const auto& x : ja["assertions"]) {
        CHECK(x.contains("name"));
        CHECK(x.contains("threshold"));
        CHECK(x.contains("value"));
        CHECK(x["pass"].is_boolean());
    }
    CHECK(ja["metrics"] == jb["metrics"]);
    CHECK(ja["assertions"] == jb["assertions"]);
    REQUIRE(fs::exists(a / "nterm.csv"));
    std::ifstream ca(a / "nterm.csv", std::ios::binary), cb(b / "nterm.csv", std::ios::binary);
    std::stringstream sa, sb;
    sa << ca.rdbuf();
    sb << cb.rdbuf();
    CHECK(sa.str() == sb.str());
    // report round-trips through the parser
    CHECK(json::parse(ja.dump()) == ja);
}

TEST_CASE("HYPERBALL_THREADS is validated") {
    CHECK(run_cli("run --set experiment=nterm --set nterm.sequences=2 --set nterm.length=20 --out " +
                  scratch("env").string())
              .status == 0);
    setenv("HYPERBALL_THREADS", "zero", 1);
    CHECK(run_cli("run --set experiment=nterm --set nterm.sequences=2 --set nterm.length=20 --out " +
                  scratch("env2").string())
              .status == 2);
    unsetenv("HYPERBALL_THREADS");
}
