#include "corrtomo/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "corrtomo/channelizer.hpp"
#include "corrtomo/estimation.hpp"
#include "corrtomo/experiments.hpp"
#include "corrtomo/matched_filter.hpp"
#include "corrtomo/records.hpp"
#include "corrtomo/rng.hpp"
#include "corrtomo/serialize.hpp"

namespace corrtomo {

using nlohmann::json;

namespace {

/// Fail-closed JSON object reader: every key must be consumed.
class ConfigReader {
public:
    ConfigReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object())
            throw std::invalid_argument("config: " + path_ + " must be an object");
    }

    template <typename T>
    T get(const char* key, T fallback) {
        used_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) return fallback;
        return value<T>(*it, key);
    }

    template <typename T>
    T require(const char* key) {
        used_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end())
            throw std::invalid_argument("config: missing required field " + path_ + key);
        return value<T>(*it, key);
    }

    json raw(const char* key, json fallback) {
        used_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? fallback : *it;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!used_.count(it.key()))
                throw std::invalid_argument("config: unknown field " + path_ + it.key());
    }

private:
    template <typename T>
    T value(const json& v, const char* key) {
        try {
            return v.get<T>();
        } catch (const json::exception&) {
            throw std::invalid_argument("config: bad value for " + path_ + key);
        }
    }

    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

ReadoutSimConfig sim_config_from_json(const json& params, ConfigReader& reader,
                                      unsigned threads) {
    ReadoutSimConfig cfg;
    cfg.threads = threads;
    const double two_pi = 2.0 * std::acos(-1.0);
    json phys = reader.raw("physical", json::object());
    ConfigReader p(phys, "params.physical.");
    double kappa_hz = p.get("kappa_hz", 1e6);
    double chi_hz = p.get("chi_hz", 1e6);
    double cross_chi_hz = p.get("cross_chi_hz", 0.0);
    double t1 = p.get("t1_s", 20e-6);
    std::vector<double> ifs = p.get("if_freqs_hz", std::vector<double>{10e6, 20e6});
    double bandwidth = p.get("bandwidth_hz", (2.0 * chi_hz + kappa_hz));
    cfg.sample_rate = p.get("sample_rate_hz", 500e6);
    cfg.duration = p.get("duration_s", 2e-6);
    cfg.stage1_decimation = p.get("stage1_decimation", 5);
    cfg.stage2_decimation = p.get("stage2_decimation", 4);
    cfg.fir_taps = p.get("fir_taps", 127);
    cfg.quantization_bits = p.get("quantization_bits", 8);
    p.finish();
    if (ifs.size() != 2)
        throw std::invalid_argument("config: params.physical.if_freqs_hz needs 2 entries");

    for (int c = 0; c < 2; ++c) {
        auto& ch = cfg.channels[std::size_t(c)];
        ch.kappa = two_pi * kappa_hz;
        ch.chi = two_pi * chi_hz;
        ch.cross_chi = two_pi * cross_chi_hz;
        ch.t1 = t1;
        ch.if_freq = ifs[std::size_t(c)];
        ch.bandwidth = bandwidth;
    }
    return cfg;
}

json run_crossover_sweep(const json& params, std::uint64_t seed,
                         const std::filesystem::path& out_dir,
                         std::vector<std::string>& outputs) {
    ConfigReader p(params, "params.");
    double snr_min = p.get("snr_min", 0.25);
    double snr_max = p.get("snr_max", 8.0);
    int points = p.get("points", 20);
    auto shots = p.get<std::size_t>("shots", 10000);
    auto reps = p.get<std::size_t>("reps", 100);
    p.finish();
    if (points < 2 || snr_min <= 0.0 || snr_max <= snr_min)
        throw std::invalid_argument("config: invalid params.snr range");

    std::ofstream csv(out_dir / "crossover.csv");
    csv << "snr,soft_var,thresh_var,soft_mse,thresh_mse\n";
    double crossing = 0.0, prev_diff = 0.0, prev_snr = 0.0;
    for (int k = 0; k < points; ++k) {
        double snr = snr_min * std::pow(snr_max / snr_min, double(k) / (points - 1));
        double nu = 1.0 / std::sqrt(snr);
        double f = gaussian_fidelity(nu);
        double soft_var = 0.0, thresh_var = 0.0, soft_mse = 0.0, thresh_mse = 0.0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            auto rng = make_rng(derive_seed(seed, std::uint64_t(k) * reps + rep));
            std::normal_distribution<double> gauss(0.0, 1.0);
            std::bernoulli_distribution coin(0.5);  // <sz> = 0 superposition
            std::vector<double> values(shots);
            for (auto& v : values) v = (coin(rng) ? 1.0 : -1.0) + nu * gauss(rng);
            EstimateResult soft = soft_average(values);
            EstimatorConfig tcfg;
            tcfg.mode = EstimatorConfig::Mode::Threshold;
            tcfg.bias_factor = f;
            EstimateResult thresh = threshold_estimate(values, tcfg);
            soft_var += soft.variance;
            thresh_var += thresh.variance;
            soft_mse += soft.mean * soft.mean;
            thresh_mse += thresh.mean * thresh.mean;
        }
        soft_var /= double(reps);
        thresh_var /= double(reps);
        soft_mse /= double(reps);
        thresh_mse /= double(reps);
        csv << snr << ',' << soft_var << ',' << thresh_var << ',' << soft_mse << ','
            << thresh_mse << '\n';
        double diff = soft_var - thresh_var;
        if (k > 0 && crossing == 0.0 && prev_diff < 0.0 && diff >= 0.0)
            crossing = prev_snr + (snr - prev_snr) * (-prev_diff) / (diff - prev_diff);
        prev_diff = diff;
        prev_snr = snr;
    }
    outputs.push_back("crossover.csv");
    auto [snr_x, fid_x] = crossover_snr();
    return {{"empirical_crossing_snr", crossing},
            {"analytic_crossing_snr", snr_x},
            {"analytic_crossing_fidelity", fid_x}};
}

json run_corr_variance(const json& params, std::uint64_t seed,
                       const std::filesystem::path& out_dir,
                       std::vector<std::string>& outputs) {
    ConfigReader p(params, "params.");
    auto nu2_1 = p.get("nu2_m1", std::vector<double>{0.42, 0.44, 0.85, 0.77});
    auto nu2_2 = p.get("nu2_m2", std::vector<double>{1.36, 1.67, 1.37, 1.84});
    auto shots = p.get<std::size_t>("shots", 100000);
    p.finish();
    if (nu2_1.size() != nu2_2.size() || nu2_1.empty())
        throw std::invalid_argument("config: params.nu2_m1/nu2_m2 length mismatch");

    static const char* state_names[] = {"00", "01", "10", "11"};
    std::ofstream csv(out_dir / "corr_variance.csv");
    csv << "state,nu2_m1,nu2_m2,nu_corr2_pred,nu_corr2_emp\n";
    json pred = json::array(), emp = json::array();
    for (std::size_t b = 0; b < nu2_1.size(); ++b) {
        double m1 = (b & 2) ? -1.0 : 1.0;
        double m2 = (b & 1) ? -1.0 : 1.0;
        double nus[2] = {nu2_1[b], nu2_2[b]};
        double ms[2] = {m1, m2};
        double predicted = goodman_variance(nus, ms);

        auto rng = make_rng(derive_seed(seed, b));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<std::vector<double>> chans(2, std::vector<double>(shots));
        for (std::size_t i = 0; i < shots; ++i) {
            chans[0][i] = m1 + std::sqrt(nu2_1[b]) * gauss(rng);
            chans[1][i] = m2 + std::sqrt(nu2_2[b]) * gauss(rng);
        }
        auto [products, est] = correlate(chans);
        double emp_var = est.variance * double(est.shots_used);

        std::string name = b < 4 ? state_names[b] : std::to_string(b);
        csv << name << ',' << nu2_1[b] << ',' << nu2_2[b] << ',' << predicted << ','
            << emp_var << '\n';
        pred.push_back(predicted);
        emp.push_back(emp_var);
    }
    outputs.push_back("corr_variance.csv");
    return {{"nu_corr2_predicted", pred}, {"nu_corr2_empirical", emp}};
}

json run_calibrate(const json& params, const std::filesystem::path& out_dir,
                   std::vector<std::string>& outputs) {
    ConfigReader p(params, "params.");
    auto ground_file = p.require<std::string>("ground_records");
    auto excited_file = p.require<std::string>("excited_records");
    int channel = p.get("channel", 0);
    auto stride = p.get<std::size_t>("window_stride", 1);
    p.finish();

    RecordSet ground = load_records(ground_file);
    RecordSet excited = load_records(excited_file);
    if (channel < 0 || std::size_t(channel) >= ground.channel_count)
        throw std::invalid_argument("config: params.channel out of range");

    CalibrationSet cal;
    for (const auto& shot : ground.shots)
        cal.ground_shots.push_back(shot[std::size_t(channel)]);
    for (const auto& shot : excited.shots)
        cal.excited_shots.push_back(shot[std::size_t(channel)]);

    Kernel kernel = estimate_kernel(cal);
    optimize_window(cal, kernel, stride);

    std::vector<double> v0, v1;
    for (const auto& s : cal.ground_shots) v0.push_back(apply_kernel(s, kernel));
    for (const auto& s : cal.excited_shots) v1.push_back(apply_kernel(s, kernel));
    double fidelity = single_shot_fidelity(v0, v1);

    std::ofstream os(out_dir / "kernel.json");
    os << kernel_to_json(kernel).dump(2) << '\n';
    outputs.push_back("kernel.json");
    return {{"window_end", kernel.window_end},
            {"single_shot_fidelity", fidelity},
            {"ground_shots", cal.ground_shots.size()},
            {"excited_shots", cal.excited_shots.size()}};
}

json run_state_tomo(const json& params, std::uint64_t seed, unsigned threads,
                    const std::filesystem::path& out_dir,
                    std::vector<std::string>& outputs) {
    ConfigReader p(params, "params.");
    ReadoutSimConfig cfg = sim_config_from_json(params, p, threads);
    auto input = p.get<std::string>("input_state", "y-z+");
    bool apply_gate = p.get("apply_gate", true);
    double angle = p.get("gate_angle", -std::acos(-1.0) / 2.0);
    auto target_nu2 = p.get("target_nu2", std::vector<double>{0.42, 1.36});
    auto cal_shots = p.get<std::size_t>("cal_shots", 10000);
    auto shots = p.get<std::size_t>("shots_per_config", 50000);
    p.finish();
    if (target_nu2.size() != 2)
        throw std::invalid_argument("config: params.target_nu2 needs 2 entries");

    Matrix rho_true = named_input_state(input);
    if (apply_gate) {
        Matrix u = zx_gate(angle);
        rho_true = u * rho_true * u.adjoint();
    }

    StateTomoExperiment exp = run_state_tomo_experiment(
        cfg, {target_nu2[0], target_nu2[1]}, cal_shots, shots, rho_true, seed);

    std::ofstream os(out_dir / "rho.json");
    os << matrix_to_json(exp.tomo.rho).dump(2) << '\n';
    pauli_decomposition_to_csv(exp.pauli_coeffs, exp.pauli_errors, 2,
                               out_dir / "pauli_decomposition.csv");
    outputs.push_back("rho.json");
    outputs.push_back("pauli_decomposition.csv");

    json mops = json::array();
    for (const auto& m : exp.meas_ops) {
        json c = json::array();
        for (Eigen::Index i = 0; i < m.z_coeffs.size(); ++i) c.push_back(m.z_coeffs(i));
        mops.push_back(c);
    }
    return {{"fidelity_to_true_state", exp.fidelity},
            {"nu2_00", {exp.nu2_00[0], exp.nu2_00[1]}},
            {"residual_norm", exp.tomo.residual_norm},
            {"condition", exp.tomo.condition},
            {"measurement_operators", mops}};
}

json run_process_tomo(const json& params, std::uint64_t seed,
                      const std::filesystem::path& out_dir,
                      std::vector<std::string>& outputs) {
    ConfigReader p(params, "params.");
    double angle = p.get("gate_angle", -std::acos(-1.0) / 2.0);
    auto nu = p.get("nu", std::vector<double>{0.648, 1.166});  // sqrt of Table I |00>
    auto shots = p.get<std::size_t>("shots_per_config", 50000);
    bool noiseless = p.get("noiseless", false);
    p.finish();
    if (nu.size() != 2)
        throw std::invalid_argument("config: params.nu needs 2 entries");

    Matrix gate = zx_gate(angle);
    ProcessTomoExperiment exp =
        noiseless ? run_process_tomo_noiseless(gate)
                  : run_process_tomo_experiment(ShotValueModel::ideal({nu[0], nu[1]}),
                                                gate, shots, seed);

    ptm_to_csv(exp.tomo.ptm, out_dir / "ptm.csv");
    std::ofstream os(out_dir / "liouville.json");
    os << matrix_to_json(exp.tomo.liouville).dump(2) << '\n';
    outputs.push_back("ptm.csv");
    outputs.push_back("liouville.json");
    return {{"process_fidelity", exp.process_fidelity},
            {"avg_gate_fidelity", exp.avg_gate_fidelity},
            {"trace_preservation_dev", exp.tomo.trace_preservation_dev},
            {"residual_norm", exp.tomo.residual_norm}};
}

json run_channelize(const json& params, const std::filesystem::path& out_dir,
                    std::vector<std::string>& outputs) {
    ConfigReader p(params, "params.");
    auto input = p.require<std::string>("input_records");
    json chans = p.raw("channels", json::array());
    int taps = p.get("fir_taps", 127);
    p.finish();
    if (!chans.is_array() || chans.empty())
        throw std::invalid_argument("config: params.channels must be a non-empty array");

    RecordSet in = load_records(input);
    if (in.channel_count != 1)
        throw std::invalid_argument("channelize expects a single-stream record file");

    std::vector<ChannelConfig> cfgs;
    for (const auto& c : chans) {
        ConfigReader cc(c, "params.channels[].");
        ChannelConfig cfg;
        cfg.if_freq = cc.require<double>("if_hz");
        cfg.bandwidth = cc.require<double>("bw_hz");
        cfg.decimation_factor = cc.require<int>("decim");
        cc.finish();
        cfgs.push_back(cfg);
    }
    int decim = cfgs.front().decimation_factor;
    for (const auto& c : cfgs)
        if (c.decimation_factor != decim)
            throw std::invalid_argument("config: all channels must share the decimation");

    RecordSet out;
    out.sample_rate = in.sample_rate / decim;
    out.channel_count = cfgs.size();
    out.shot_length = (in.shot_length + std::size_t(decim) - 1) / std::size_t(decim);
    for (const auto& shot : in.shots) {
        std::vector<double> stream(shot[0].size());
        for (std::size_t j = 0; j < stream.size(); ++j) stream[j] = shot[0][j].real();
        MultiplexedStream ms;
        ms.samples = std::move(stream);
        ms.sample_rate = in.sample_rate;
        std::vector<std::vector<Cpx>> per_chan;
        for (std::size_t c = 0; c < cfgs.size(); ++c) {
            FirFilter filt = design_lowpass(cfgs[c].bandwidth / 2.0, in.sample_rate, taps);
            per_chan.push_back(extract_channel(ms, cfgs[c], filt, int(c)).samples);
        }
        out.shots.push_back(std::move(per_chan));
    }
    save_records(out, out_dir / "channelized.rec");
    outputs.push_back("channelized.rec");
    return {{"channels", cfgs.size()}, {"shots", out.shots.size()}};
}

json run_bench(const json& params, std::uint64_t seed,
               const std::filesystem::path& out_dir,
               std::vector<std::string>& outputs) {
    ConfigReader p(params, "params.");
    auto samples = p.get<std::size_t>("samples", 5000000);
    int taps = p.get("fir_taps", 127);
    int decim = p.get("decimation", 20);
    double if_freq = p.get("if_hz", 10e6);
    double rate = p.get("sample_rate_hz", 500e6);
    p.finish();

    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 0.1);
    MultiplexedStream stream;
    stream.sample_rate = rate;
    stream.samples.resize(samples);
    for (auto& s : stream.samples) s = gauss(rng);

    FirFilter filt = design_lowpass(rate / (2.5 * decim), rate, taps);
    ChannelConfig cfg{if_freq, rate / (2.0 * decim), decim};
    auto t0 = std::chrono::steady_clock::now();
    ShotRecord rec = extract_channel(stream, cfg, filt, 0);
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();

    json metrics = {{"input_samples", samples},
                    {"output_samples", rec.samples.size()},
                    {"seconds", secs},
                    {"samples_per_sec", double(samples) / secs}};
    std::ofstream os(out_dir / "bench.json");
    os << metrics.dump(2) << '\n';
    outputs.push_back("bench.json");
    return metrics;
}

}  // namespace

std::string config_hash(const json& config) {
    json semantic = {{"schema_version", config.value("schema_version", 1)},
                     {"scenario", config.value("scenario", "")},
                     {"seed", config.value("seed", 0)},
                     {"params", config.value("params", json::object())}};
    std::string dump = semantic.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json report_to_json(const RunReport& report) {
    return {{"scenario", report.scenario},
            {"wall_seconds", report.wall_seconds},
            {"config_hash", report.config_hash},
            {"output_files", report.output_files},
            {"metrics", report.metrics}};
}

RunReport run_scenario(const json& config, const std::filesystem::path& out_dir,
                       unsigned threads) {
    ConfigReader top(config, "");
    int version = top.get("schema_version", 1);
    if (version != 1)
        throw std::invalid_argument("config: unsupported schema_version");
    auto scenario = top.require<std::string>("scenario");
    auto seed = top.require<std::uint64_t>("seed");
    json params = top.raw("params", json::object());
    top.finish();

    std::filesystem::create_directories(out_dir);
    auto t0 = std::chrono::steady_clock::now();

    RunReport report;
    report.scenario = scenario;
    report.config_hash = config_hash(config);
    if (scenario == "crossover-sweep")
        report.metrics = run_crossover_sweep(params, seed, out_dir, report.output_files);
    else if (scenario == "corr-variance")
        report.metrics = run_corr_variance(params, seed, out_dir, report.output_files);
    else if (scenario == "calibrate")
        report.metrics = run_calibrate(params, out_dir, report.output_files);
    else if (scenario == "state-tomo")
        report.metrics = run_state_tomo(params, seed, threads, out_dir, report.output_files);
    else if (scenario == "process-tomo")
        report.metrics = run_process_tomo(params, seed, out_dir, report.output_files);
    else if (scenario == "channelize")
        report.metrics = run_channelize(params, out_dir, report.output_files);
    else if (scenario == "bench")
        report.metrics = run_bench(params, seed, out_dir, report.output_files);
    else
        throw std::invalid_argument("unknown scenario: " + scenario);

    auto t1 = std::chrono::steady_clock::now();
    report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

    std::ofstream os(out_dir / "report.json");
    os << report_to_json(report).dump(2) << '\n';
    report.output_files.push_back("report.json");
    return report;
}

}  // namespace corrtomo
