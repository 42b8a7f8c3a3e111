#ifndef CORRTOMO_SCENARIO_HPP
#define CORRTOMO_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace corrtomo {

struct RunReport {
    std::string scenario;
    double wall_seconds = 0.0;
    std::string config_hash;
    std::vector<std::string> output_files;
    nlohmann::json metrics;
};

/// Executes one scenario. `config` must carry schema_version, scenario,
/// seed and a params object; unknown fields are rejected with their
/// field path. All outputs land in out_dir and are deterministic for a
/// fixed seed. Scenarios: crossover-sweep, corr-variance, calibrate,
/// state-tomo, process-tomo, channelize, bench.
RunReport run_scenario(const nlohmann::json& config,
                       const std::filesystem::path& out_dir,
                       unsigned threads = 1);

/// FNV-1a hash over the semantically meaningful config fields.
std::string config_hash(const nlohmann::json& config);

/// Report serialized to JSON (written as report.json by run_scenario).
nlohmann::json report_to_json(const RunReport& report);

}  // namespace corrtomo

#endif
