#include <doctest.h>

#include <stdexcept>

#include <json.hpp>

#include "tmdist/harness.hpp"

using namespace tmdist;

TEST_CASE("registry runs experiments from string params") {
    RunOutput d = run_experiment("discrepancy", {{"alpha", "1/2"}, {"N", "2"}});
    CHECK(d.value == "1/2");
    CHECK(d.exact);
    RunOutput g = run_experiment("gowers_brute", {{"m", "2"}, {"rho", "2"}});
    CHECK(g.value == "1/2^1");
    RunOutput r = run_experiment("gowers_recursion", {{"m", "2"}, {"rho", "2"}});
    CHECK(r.value == g.value);
    CHECK_THROWS_AS(run_experiment("no_such_thing", {}), std::invalid_argument);
}

TEST_CASE("csv round trip preserves exact records bit for bit") {
    std::vector<ExperimentRecord> recs;
    ExperimentRecord a;
    a.experiment = "discrepancy";
    a.params = {{"alpha", "5/13"}, {"N", "9"}};
    a.value = "25/117";
    a.exact = true;
    a.seed = 42;
    recs.push_back(a);
    ExperimentRecord b;
    b.experiment = "note";
    b.params = {{"text", "comma, \"quoted\""}};
    b.value = "ok";
    recs.push_back(b);

    std::string csv = records_to_csv(recs);
    auto back = records_from_csv(csv);
    REQUIRE(back.size() == 2);
    CHECK(back[0].experiment == a.experiment);
    CHECK(back[0].params == a.params);
    CHECK(back[0].value == a.value);
    CHECK(back[0].exact == a.exact);
    CHECK(back[0].seed == a.seed);
    CHECK(back[1].params == b.params);
    CHECK(records_to_csv(back) == csv);
}

TEST_CASE("json output mirrors the records") {
    ExperimentRecord a;
    a.experiment = "pshapiro";
    a.params = {{"c", "3/2"}, {"N", "16"}};
    a.value = "1/16";
    a.exact = true;
    std::vector<ExperimentRecord> recs{a};
    auto parsed = nlohmann::json::parse(records_to_json(recs));
    REQUIRE(parsed.is_array());
    CHECK(parsed[0]["experiment"] == "pshapiro");
    CHECK(parsed[0]["params"]["c"] == "3/2");
    CHECK(parsed[0]["value"] == "1/16");
    CHECK(parsed[0]["exact"] == true);
    CHECK(parsed[0]["seed"].is_null());
}

TEST_CASE("sweep config parsing with power and geometric tokens") {
    SweepConfig cfg = parse_sweep_config(
        "experiment=discrepancy\n"
        "# comment\n"
        "alpha=5/13\n"
        "N=2^4,geom:64:256:2\n"
        "threads=2\n"
        "seed=7\n"
        "timing=off\n");
    CHECK(cfg.experiment == "discrepancy");
    REQUIRE(cfg.grids.size() == 2);
    CHECK(cfg.grids[1].second == std::vector<std::string>{"16", "64", "128", "256"});
    CHECK(cfg.seed == 7);
    CHECK_THROWS_AS(parse_sweep_config("alpha=1/2\n"), std::invalid_argument);
}

TEST_CASE("sweep is deterministic across thread counts and replayable") {
    SweepConfig cfg;
    cfg.experiment = "discrepancy";
    cfg.grids = {{"alpha", {"1/3", "2/7", "5/13"}}, {"N", {"4", "16", "64"}}};
    cfg.seed = 99;
    cfg.threads = 1;
    auto r1 = run_sweep(cfg);
    cfg.threads = 2;
    auto r2 = run_sweep(cfg);
    CHECK(records_to_csv(r1) == records_to_csv(r2));
    CHECK(records_to_json(r1) == records_to_json(r2));
    REQUIRE(r1.size() == 9);

    // replay each record from its own parameters alone
    for (const auto& rec : r1) {
        RunOutput again = run_experiment(rec.experiment, rec.params);
        CHECK(again.value == rec.value);
        CHECK(again.exact == rec.exact);
    }
}

TEST_CASE("geometric single-variable sweeps append a slope row") {
    SweepConfig cfg;
    cfg.experiment = "discrepancy";
    cfg.grids = {{"alpha", {"5/13"}}, {"N", {"16", "64", "256", "1024"}}};
    auto recs = run_sweep(cfg);
    REQUIRE(recs.size() == 5);
    CHECK(recs.back().experiment == "discrepancy.slope");
    double slope = std::stod(recs.back().value);
    CHECK(slope < 0);  // discrepancy of a fixed rational decays until saturation
}

TEST_CASE("budget overruns are marked skipped and the sweep continues") {
    SweepConfig cfg;
    cfg.experiment = "lod_total";
    cfg.grids = {{"x", {"64", "1048576"}}, {"theta", {"0.5"}}};
    cfg.budget = 100000;
    auto recs = run_sweep(cfg);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].value != "skipped");
    CHECK(recs[1].value == "skipped");
}

TEST_CASE("a failing sweep point surfaces as a clean error") {
    SweepConfig cfg;
    cfg.experiment = "discrepancy";
    cfg.grids = {{"alpha", {"1/3"}}, {"N", {"0"}}};  // N must be positive
    CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
}
