#include "corrtomo/pipeline.hpp"

#include <cmath>
#include <stdexcept>

#include "corrtomo/parallel.hpp"
#include "corrtomo/rng.hpp"

namespace corrtomo {

namespace {
constexpr std::array<std::array<int, 2>, 4> kBases{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
}

std::size_t TwoQubitReadoutSim::check(int channel) {
    if (channel < 0 || channel > 1)
        throw std::invalid_argument("channel index must be 0 or 1");
    return std::size_t(channel);
}

TwoQubitReadoutSim::TwoQubitReadoutSim(const ReadoutSimConfig& cfg) : cfg_(cfg) {
    if (cfg_.sample_rate <= 0.0 || cfg_.duration <= 0.0)
        throw std::invalid_argument("invalid sample rate or duration");

    double max_edge = 0.0, max_bw = 0.0;
    for (const auto& ch : cfg_.channels) {
        max_edge = std::max(max_edge, ch.if_freq);
        max_bw = std::max(max_bw, ch.bandwidth);
    }
    // stage-1 passes every channel band; stage-2 isolates one channel
    double rate1 = cfg_.sample_rate / cfg_.stage1_decimation;
    stage1_ = design_lowpass(max_edge + max_bw, cfg_.sample_rate, cfg_.fir_taps);
    stage2_ = design_lowpass(max_bw / 2.0, rate1, cfg_.fir_taps);

    for (int c = 0; c < 2; ++c)
        for (int own = 0; own < 2; ++own)
            for (int other = 0; other < 2; ++other)
                traces_[std::size_t(c)][std::size_t(own)][std::size_t(other)] =
                    record_trace(c, own, other);

    update_full_scale();
}

double TwoQubitReadoutSim::drive_amp(int channel) const {
    const auto& ch = cfg_.channels[check(channel)];
    return ch.drive_amp > 0.0 ? ch.drive_amp : ch.kappa / 2.0;
}

void TwoQubitReadoutSim::set_drive_amp(int channel, double amp) {
    if (amp <= 0.0)
        throw std::invalid_argument("set_drive_amp: amplitude must be positive");
    std::size_t c = check(channel);
    cfg_.channels[c].drive_amp = amp;
    for (int own = 0; own < 2; ++own)
        for (int other = 0; other < 2; ++other)
            traces_[c][std::size_t(own)][std::size_t(other)] =
                record_trace(channel, own, other);
    calibrated_ = false;
    update_full_scale();
}

// Auto full scale must track the noise level: tuning can raise sigma by
// orders of magnitude and a stale headroom estimate would clip hard.
void TwoQubitReadoutSim::update_full_scale() {
    double amp = 0.0, noise2 = 0.0;
    for (int c = 0; c < 2; ++c) {
        double m = 0.0;
        for (int own = 0; own < 2; ++own)
            for (int other = 0; other < 2; ++other)
                for (const Cpx& a : traces_[std::size_t(c)][std::size_t(own)][std::size_t(other)])
                    m = std::max(m, std::abs(a));
        amp += m;
        noise2 += cfg_.channels[std::size_t(c)].sigma_per_sample *
                  cfg_.channels[std::size_t(c)].sigma_per_sample;
    }
    full_scale_ = cfg_.full_scale > 0.0 ? cfg_.full_scale
                                        : amp + 6.0 * std::sqrt(noise2) + 1e-12;
}

std::vector<Cpx> TwoQubitReadoutSim::record_trace(int channel, int own,
                                                  int other) const {
    const auto& ch = cfg_.channels[std::size_t(channel)];
    CavityParams params;
    params.kappa = ch.kappa;
    params.chi = ch.chi;
    params.detuning = ch.detuning + (other == 0 ? ch.cross_chi : -ch.cross_chi);
    params.sample_period = 1.0 / cfg_.sample_rate;
    double eps = ch.drive_amp > 0.0 ? ch.drive_amp : ch.kappa / 2.0;
    params.drive_envelope = [eps](double) { return Cpx(eps, 0.0); };
    return cavity_response(params, own, cfg_.duration);
}

std::array<std::vector<Cpx>, 2> TwoQubitReadoutSim::baseband_shot(
    std::array<int, 2> outcome, std::uint64_t seed) const {
    double dt = 1.0 / cfg_.sample_rate;
    std::vector<ShotRecord> recs(2);
    std::vector<ChannelBand> bands(2);
    for (int c = 0; c < 2; ++c) {
        const auto& t = traces_[std::size_t(c)];
        int own = outcome[std::size_t(c)];
        int other = outcome[std::size_t(1 - c)];
        NoiseParams noise{cfg_.channels[std::size_t(c)].sigma_per_sample,
                          cfg_.channels[std::size_t(c)].t1};
        recs[std::size_t(c)] =
            generate_shot(t[0][std::size_t(other)], t[1][std::size_t(other)], own,
                          noise, derive_seed(seed, std::uint64_t(c)), dt, c);
        bands[std::size_t(c)] = {cfg_.channels[std::size_t(c)].if_freq,
                                 cfg_.channels[std::size_t(c)].bandwidth};
    }

    StreamConfig scfg{cfg_.sample_rate, cfg_.quantization_bits, full_scale_};
    MultiplexedStream stream = synthesize_multiplexed(recs, bands, scfg);

    MultiplexedStream stage1_out;
    stage1_out.samples = decimate(std::span<const double>(stream.samples), stage1_,
                                  cfg_.stage1_decimation);
    stage1_out.sample_rate = cfg_.sample_rate / cfg_.stage1_decimation;
    stage1_out.quantization_bits = stream.quantization_bits;
    stage1_out.if_freqs = stream.if_freqs;

    std::array<std::vector<Cpx>, 2> out;
    for (int c = 0; c < 2; ++c) {
        ChannelConfig ccfg{cfg_.channels[std::size_t(c)].if_freq,
                           cfg_.channels[std::size_t(c)].bandwidth,
                           cfg_.stage2_decimation};
        out[std::size_t(c)] =
            extract_channel(stage1_out, ccfg, stage2_, c).samples;
    }
    return out;
}

std::vector<Cpx> TwoQubitReadoutSim::noiseless_baseband(
    int channel, std::array<int, 2> outcome) const {
    // zero-noise, infinite-T1 path through the same chain
    TwoQubitReadoutSim quiet(*this);
    quiet.cfg_.channels[0].sigma_per_sample = 0.0;
    quiet.cfg_.channels[1].sigma_per_sample = 0.0;
    quiet.cfg_.channels[0].t1 = std::numeric_limits<double>::infinity();
    quiet.cfg_.channels[1].t1 = std::numeric_limits<double>::infinity();
    return quiet.baseband_shot(outcome, 0)[check(channel)];
}

void TwoQubitReadoutSim::calibrate(std::size_t shots_per_state, std::uint64_t seed,
                                   std::size_t window_stride) {
    if (shots_per_state < 100)
        throw std::invalid_argument("calibrate: need at least 100 shots per state");

    // [basis][channel][shot] baseband records
    std::array<std::array<std::vector<std::vector<Cpx>>, 2>, 4> records;
    for (std::size_t b = 0; b < 4; ++b) {
        records[b][0].resize(shots_per_state);
        records[b][1].resize(shots_per_state);
        parallel_for(shots_per_state, cfg_.threads, [&](std::size_t i) {
            auto bb = baseband_shot(kBases[b],
                                    derive_seed(seed, b * shots_per_state + i));
            records[b][0][i] = std::move(bb[0]);
            records[b][1][i] = std::move(bb[1]);
        });
    }

    // channel 0 reads qubit 1 (excited basis |10>), channel 1 reads
    // qubit 2 (excited basis |01>); the partner qubit stays in ground
    const std::size_t excited_basis[2] = {2, 1};
    for (int c = 0; c < 2; ++c) {
        CalibrationSet cal;
        cal.ground_shots = records[0][std::size_t(c)];
        cal.excited_shots = records[excited_basis[c]][std::size_t(c)];
        kernels_[std::size_t(c)] = estimate_kernel(cal);
        optimize_window(cal, kernels_[std::size_t(c)], window_stride);
    }

    for (int c = 0; c < 2; ++c) {
        basis_means_[std::size_t(c)] = RealVector::Zero(4);
        basis_vars_[std::size_t(c)] = RealVector::Zero(4);
    }
    prod_means_ = RealVector::Zero(4);
    prod_vars_ = RealVector::Zero(4);

    for (std::size_t b = 0; b < 4; ++b) {
        std::array<std::vector<double>, 2> vals;
        for (int c = 0; c < 2; ++c) {
            vals[std::size_t(c)].resize(shots_per_state);
            for (std::size_t i = 0; i < shots_per_state; ++i)
                vals[std::size_t(c)][i] =
                    apply_kernel(records[b][std::size_t(c)][i], kernels_[std::size_t(c)]);
        }
        std::vector<double> prod(shots_per_state);
        for (std::size_t i = 0; i < shots_per_state; ++i)
            prod[i] = vals[0][i] * vals[1][i];

        auto accum = [](std::span<const double> v, double& mean, double& var) {
            mean = 0.0;
            for (double x : v) mean += x;
            mean /= double(v.size());
            var = 0.0;
            for (double x : v) var += (x - mean) * (x - mean);
            var /= double(v.size() - 1);
        };
        for (int c = 0; c < 2; ++c)
            accum(vals[std::size_t(c)], basis_means_[std::size_t(c)](Eigen::Index(b)),
                  basis_vars_[std::size_t(c)](Eigen::Index(b)));
        accum(prod, prod_means_(Eigen::Index(b)), prod_vars_(Eigen::Index(b)));
    }

    meas_ops_.clear();
    meas_ops_.push_back(measurement_tomography(basis_means_[0]));
    meas_ops_.push_back(measurement_tomography(basis_means_[1]));
    meas_ops_.push_back(measurement_tomography(prod_means_));
    calibrated_ = true;
}

TwoQubitReadoutSim::Values TwoQubitReadoutSim::measure(
    std::span<const std::array<int, 2>> outcomes, std::uint64_t seed) const {
    if (!calibrated_)
        throw std::logic_error("measure: calibrate() must run first");
    Values v;
    v.channel[0].resize(outcomes.size());
    v.channel[1].resize(outcomes.size());
    v.product.resize(outcomes.size());
    parallel_for(outcomes.size(), cfg_.threads, [&](std::size_t i) {
        auto bb = baseband_shot(outcomes[i], derive_seed(seed, i));
        double v0 = apply_kernel(bb[0], kernels_[0]);
        double v1 = apply_kernel(bb[1], kernels_[1]);
        v.channel[0][i] = v0;
        v.channel[1][i] = v1;
        v.product[i] = v0 * v1;
    });
    return v;
}

std::vector<std::array<int, 2>> TwoQubitReadoutSim::sample_outcomes(
    const Matrix& rho, std::size_t shots, std::uint64_t seed) const {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument("sample_outcomes: expected a 4x4 density matrix");
    std::array<double, 4> p{};
    double total = 0.0;
    for (int b = 0; b < 4; ++b) {
        p[std::size_t(b)] = std::max(0.0, rho(b, b).real());
        total += p[std::size_t(b)];
    }
    if (total <= 0.0)
        throw std::invalid_argument("sample_outcomes: non-positive diagonal");

    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> uni(0.0, total);
    std::vector<std::array<int, 2>> out(shots);
    for (auto& o : out) {
        double u = uni(rng);
        int b = 0;
        for (; b < 3; ++b) {
            if (u < p[std::size_t(b)]) break;
            u -= p[std::size_t(b)];
        }
        o = {b >> 1, b & 1};
    }
    return out;
}

void tune_noise_to_variance(TwoQubitReadoutSim& sim,
                            std::array<double, 2> target_nu2,
                            std::size_t pilot_shots, std::uint64_t seed) {
    // nu^2 ~ 1/amp^2 only once the optimized window stops moving, so
    // fixed-point iterate until both channels sit within 5%
    for (int iter = 0; iter < 8; ++iter) {
        sim.calibrate(pilot_shots, derive_seed(seed, std::uint64_t(100 + iter)));
        bool converged = true;
        for (int c = 0; c < 2; ++c) {
            double measured = sim.basis_variances(c)(0);
            if (measured <= 0.0)
                throw std::runtime_error("tune_noise_to_variance: degenerate pilot");
            double ratio = target_nu2[std::size_t(c)] / measured;
            if (std::abs(ratio - 1.0) > 0.05) converged = false;
            sim.set_drive_amp(c, sim.drive_amp(c) / std::sqrt(ratio));
        }
        if (converged) break;
    }
}

TwoQubitReadoutSim::Values ShotValueModel::sample(const Matrix& rho,
                                                  std::size_t shots,
                                                  std::uint64_t seed) const {
    std::array<double, 4> p{};
    double total = 0.0;
    for (int b = 0; b < 4; ++b) {
        p[std::size_t(b)] = std::max(0.0, rho(b, b).real());
        total += p[std::size_t(b)];
    }
    if (total <= 0.0)
        throw std::invalid_argument("ShotValueModel: non-positive diagonal");

    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> uni(0.0, total);
    std::normal_distribution<double> gauss(0.0, 1.0);
    TwoQubitReadoutSim::Values v;
    v.channel[0].resize(shots);
    v.channel[1].resize(shots);
    v.product.resize(shots);
    for (std::size_t i = 0; i < shots; ++i) {
        double u = uni(rng);
        int b = 0;
        for (; b < 3; ++b) {
            if (u < p[std::size_t(b)]) break;
            u -= p[std::size_t(b)];
        }
        for (int c = 0; c < 2; ++c)
            v.channel[std::size_t(c)][i] = basis_means[std::size_t(c)](b) +
                                           basis_sigmas[std::size_t(c)](b) * gauss(rng);
        v.product[i] = v.channel[0][i] * v.channel[1][i];
    }
    return v;
}

ShotValueModel ShotValueModel::from_sim(const TwoQubitReadoutSim& sim) {
    ShotValueModel m;
    for (int c = 0; c < 2; ++c) {
        m.basis_means[std::size_t(c)] = sim.basis_means(c);
        m.basis_sigmas[std::size_t(c)] =
            sim.basis_variances(c).array().sqrt().matrix();
    }
    return m;
}

ShotValueModel ShotValueModel::ideal(std::array<double, 2> nu) {
    ShotValueModel m;
    RealVector m0(4), m1(4);
    m0 << 1, 1, -1, -1;  // channel 0 reads the first qubit
    m1 << 1, -1, 1, -1;
    m.basis_means = {m0, m1};
    m.basis_sigmas = {RealVector::Constant(4, nu[0]), RealVector::Constant(4, nu[1])};
    return m;
}

}  // namespace corrtomo
