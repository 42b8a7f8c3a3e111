#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "corrtomo/scenario.hpp"

using namespace corrtomo;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    return std::string((std::istreambuf_iterator<char>(f)), {});
}

json base_config(const std::string& scenario, std::uint64_t seed) {
    return {{"schema_version", 1},
            {"scenario", scenario},
            {"seed", seed},
            {"params", json::object()}};
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const char* name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("config validation is fail-closed") {
    TempDir dir("corrtomo_scen_valid");

    json cfg = base_config("corr-variance", 1);
    cfg["params"]["bogus_knob"] = 3;
    CHECK_THROWS_WITH_AS(run_scenario(cfg, dir.path), doctest::Contains("params.bogus_knob"),
                         std::invalid_argument);

    json top = base_config("corr-variance", 1);
    top["extra"] = 1;
    CHECK_THROWS_WITH_AS(run_scenario(top, dir.path), doctest::Contains("extra"),
                         std::invalid_argument);

    json noseed = base_config("corr-variance", 1);
    noseed.erase("seed");
    CHECK_THROWS_WITH_AS(run_scenario(noseed, dir.path), doctest::Contains("seed"),
                         std::invalid_argument);

    CHECK_THROWS_WITH_AS(run_scenario(base_config("no-such-thing", 1), dir.path),
                         doctest::Contains("unknown scenario"), std::invalid_argument);

    json badver = base_config("corr-variance", 1);
    badver["schema_version"] = 9;
    CHECK_THROWS(run_scenario(badver, dir.path));
}

TEST_CASE("config hash tracks semantic fields") {
    json a = base_config("corr-variance", 5);
    json b = base_config("corr-variance", 5);
    CHECK(config_hash(a) == config_hash(b));

    json c = b;
    c["seed"] = 6;
    CHECK(config_hash(a) != config_hash(c));

    json d = b;
    d["params"]["shots"] = 500;
    CHECK(config_hash(a) != config_hash(d));
}

TEST_CASE("corr-variance scenario matches the analytic model") {
    TempDir dir("corrtomo_scen_cv");
    json cfg = base_config("corr-variance", 9);
    RunReport rep = run_scenario(cfg, dir.path);
    auto pred = rep.metrics["nu_corr2_predicted"].get<std::vector<double>>();
    auto emp = rep.metrics["nu_corr2_empirical"].get<std::vector<double>>();
    REQUIRE(pred.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(emp[i] == doctest::Approx(pred[i]).epsilon(0.05));
    CHECK(std::filesystem::exists(dir.path / "corr_variance.csv"));
    CHECK(std::filesystem::exists(dir.path / "report.json"));

    // identical seed -> byte-identical outputs
    TempDir dir2("corrtomo_scen_cv2");
    run_scenario(cfg, dir2.path);
    CHECK(slurp(dir.path / "corr_variance.csv") ==
          slurp(dir2.path / "corr_variance.csv"));
}

TEST_CASE("crossover-sweep scenario") {
    TempDir dir("corrtomo_scen_xo");
    json cfg = base_config("crossover-sweep", 3);
    cfg["params"] = {{"points", 6}, {"shots", 2000}, {"reps", 8}};
    RunReport rep = run_scenario(cfg, dir.path);
    double analytic = rep.metrics["analytic_crossing_snr"].get<double>();
    CHECK(analytic == doctest::Approx(1.41).epsilon(0.01));
    CHECK(std::filesystem::exists(dir.path / "crossover.csv"));
}

TEST_CASE("state-tomo scenario is deterministic under a fixed seed") {
    json cfg = base_config("state-tomo", 42);
    cfg["params"] = {{"cal_shots", 200},
                     {"shots_per_config", 200},
                     {"physical", {{"duration_s", 1e-6}}}};

    TempDir d1("corrtomo_scen_st1"), d2("corrtomo_scen_st2");
    RunReport r1 = run_scenario(cfg, d1.path);
    RunReport r2 = run_scenario(cfg, d2.path);
    CHECK(r1.config_hash == r2.config_hash);
    CHECK(slurp(d1.path / "rho.json") == slurp(d2.path / "rho.json"));
    CHECK(slurp(d1.path / "pauli_decomposition.csv") ==
          slurp(d2.path / "pauli_decomposition.csv"));
    // fidelity is meaningful even at this tiny shot budget
    CHECK(r1.metrics["fidelity_to_true_state"].get<double>() > 0.8);
}

TEST_CASE("process-tomo noiseless scenario") {
    TempDir dir("corrtomo_scen_pt");
    json cfg = base_config("process-tomo", 1);
    cfg["params"] = {{"noiseless", true}};
    RunReport rep = run_scenario(cfg, dir.path);
    CHECK(std::abs(rep.metrics["avg_gate_fidelity"].get<double>() - 1.0) < 1e-8);
    CHECK(std::filesystem::exists(dir.path / "ptm.csv"));
}

TEST_CASE("bench scenario emits throughput") {
    TempDir dir("corrtomo_scen_bench");
    json cfg = base_config("bench", 2);
    cfg["params"] = {{"samples", 200000}};
    RunReport rep = run_scenario(cfg, dir.path);
    CHECK(rep.metrics["samples_per_sec"].get<double>() > 0.0);
}
