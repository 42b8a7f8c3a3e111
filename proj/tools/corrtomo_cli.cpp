#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "corrtomo/scenario.hpp"

using nlohmann::json;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir = "out";
    unsigned threads = 1;
};

void add_globals(CLI::App* cmd, GlobalOpts& g) {
    cmd->add_option("--config", g.config_path, "JSON scenario config")
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", g.seed, "RNG seed (overrides config)")
        ->each([&g](const std::string&) { g.seed_set = true; });
    cmd->add_option("--out", g.out_dir, "output directory");
    cmd->add_option("--threads", g.threads, "worker threads")
        ->check(CLI::PositiveNumber);
}

json load_config(const GlobalOpts& g, const std::string& scenario) {
    json cfg;
    if (!g.config_path.empty()) {
        std::ifstream is(g.config_path);
        if (!is) throw std::runtime_error("cannot open " + g.config_path);
        is >> cfg;
    } else {
        cfg = {{"schema_version", 1}, {"params", json::object()}};
    }
    cfg["scenario"] = scenario;
    if (g.seed_set || !cfg.contains("seed")) cfg["seed"] = g.seed;
    return cfg;
}

void print_metrics(const corrtomo::RunReport& report) {
    std::size_t width = 12;
    for (auto it = report.metrics.begin(); it != report.metrics.end(); ++it)
        width = std::max(width, it.key().size());
    std::cout << "scenario: " << report.scenario << "  (config " << report.config_hash
              << ", " << std::fixed << std::setprecision(2) << report.wall_seconds
              << " s)\n";
    std::cout.unsetf(std::ios::fixed);
    std::cout << std::setprecision(10);
    for (auto it = report.metrics.begin(); it != report.metrics.end(); ++it) {
        std::cout << "  " << std::left << std::setw(int(width)) << it.key() << "  ";
        if (it.value().is_number_float())
            std::cout << it.value().get<double>();
        else
            std::cout << it.value().dump();
        std::cout << '\n';
    }
    for (const auto& f : report.output_files)
        std::cout << "  wrote " << report.scenario << " output: " << f << '\n';
}

int run(const GlobalOpts& g, const std::string& scenario, json cfg) {
    try {
        corrtomo::RunReport report = corrtomo::run_scenario(cfg, g.out_dir, g.threads);
        print_metrics(report);
        (void)scenario;
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corrtomo: multiplexed-readout simulation and tomography"};
    app.require_subcommand(1);

    GlobalOpts g;
    std::vector<std::string> channel_specs;
    std::string input_records;

    struct Sub {
        const char* name;
        const char* scenario;
        const char* desc;
    };
    const Sub subs[] = {
        {"calibrate", "calibrate", "derive a matched-filter kernel from record files"},
        {"sweep-crossover", "crossover-sweep",
         "soft vs threshold estimator variance across SNR"},
        {"corr-variance", "corr-variance",
         "Goodman variance of correlated channels, predicted vs empirical"},
        {"state-tomo", "state-tomo", "end-to-end two-qubit state tomography"},
        {"process-tomo", "process-tomo", "two-qubit process tomography"},
        {"channelize", "channelize", "extract IF channels from a recorded stream"},
        {"bench", "bench", "channelizer throughput benchmark"},
    };

    std::map<const CLI::App*, std::string> scenario_of;
    for (const auto& s : subs) {
        CLI::App* cmd = app.add_subcommand(s.name, s.desc);
        add_globals(cmd, g);
        if (std::string(s.name) == "channelize") {
            cmd->add_option("--channel", channel_specs,
                            "channel as <if_hz>:<bw_hz>:<decim>, repeatable");
            cmd->add_option("--input", input_records, "input record file");
        }
        scenario_of[cmd] = s.scenario;
    }

    CLI11_PARSE(app, argc, argv);

    const CLI::App* cmd = app.get_subcommands().front();
    const std::string scenario = scenario_of.at(cmd);
    json cfg;
    try {
        cfg = load_config(g, scenario);
        if (scenario == "channelize") {
            if (!input_records.empty()) cfg["params"]["input_records"] = input_records;
            if (!channel_specs.empty()) {
                json chans = json::array();
                for (const auto& spec : channel_specs) {
                    std::istringstream ss(spec);
                    double if_hz = 0.0, bw_hz = 0.0;
                    int decim = 0;
                    char c1 = 0, c2 = 0;
                    if (!(ss >> if_hz >> c1 >> bw_hz >> c2 >> decim) || c1 != ':' ||
                        c2 != ':')
                        throw std::runtime_error("bad --channel spec: " + spec +
                                                 " (want <if_hz>:<bw_hz>:<decim>)");
                    chans.push_back(
                        {{"if_hz", if_hz}, {"bw_hz", bw_hz}, {"decim", decim}});
                }
                cfg["params"]["channels"] = chans;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return run(g, scenario, std::move(cfg));
}
