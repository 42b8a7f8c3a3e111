#include "corrtomo/readout.hpp"

#include <cmath>
#include <stdexcept>

#include "corrtomo/rng.hpp"

namespace corrtomo {

std::vector<Cpx> cavity_response(const CavityParams& params, int qubit_state,
                                 double duration) {
    if (params.kappa <= 0.0 || params.sample_period <= 0.0)
        throw std::invalid_argument("cavity_response: kappa and sample_period must be > 0");
    if (duration < params.sample_period)
        throw std::invalid_argument("cavity_response: duration shorter than one sample");

    double dt = params.sample_period;
    auto n = std::size_t(std::llround(duration / dt));
    double delta = params.detuning + (qubit_state == 0 ? params.chi : -params.chi);
    Cpx pole(-params.kappa / 2.0, -delta);

    auto drive = [&](double t) -> Cpx {
        Cpx eps = params.drive_envelope ? params.drive_envelope(t) : Cpx(0.0);
        if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag()))
            throw std::invalid_argument("cavity_response: non-finite drive envelope");
        return eps;
    };

    std::vector<Cpx> alpha(n);
    Cpx a(0.0);
    for (std::size_t j = 0; j < n; ++j) {
        alpha[j] = a;
        double t = double(j) * dt;
        Cpx k1 = pole * a + drive(t);
        Cpx k2 = pole * (a + 0.5 * dt * k1) + drive(t + 0.5 * dt);
        Cpx k3 = pole * (a + 0.5 * dt * k2) + drive(t + 0.5 * dt);
        Cpx k4 = pole * (a + dt * k3) + drive(t + dt);
        a += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return alpha;
}

ShotRecord generate_shot(std::span<const Cpx> alpha0, std::span<const Cpx> alpha1,
                         int prepared_state, const NoiseParams& noise,
                         std::uint64_t seed, double sample_period,
                         int channel_id) {
    if (alpha0.size() != alpha1.size() || alpha0.empty())
        throw std::invalid_argument("generate_shot: trace length mismatch");
    if (noise.sigma_per_sample < 0.0 || noise.t1 <= 0.0)
        throw std::invalid_argument("generate_shot: invalid noise parameters");

    auto rng = make_rng(seed);
    std::size_t n = alpha0.size();

    // Jump time sampled first so the noise stream is identical across
    // prepared states for a given seed.
    double jump_time = std::numeric_limits<double>::infinity();
    if (prepared_state == 1 && std::isfinite(noise.t1)) {
        std::exponential_distribution<double> exp_dist(1.0 / noise.t1);
        jump_time = exp_dist(rng);
    }

    ShotRecord rec;
    rec.samples.resize(n);
    rec.sample_period = sample_period;
    rec.channel_id = channel_id;

    std::normal_distribution<double> gauss(0.0, 1.0);
    double sigma = noise.sigma_per_sample;
    for (std::size_t j = 0; j < n; ++j) {
        double t = double(j) * sample_period;
        Cpx base = (prepared_state == 1 && t < jump_time) ? alpha1[j] : alpha0[j];
        if (sigma > 0.0)
            base += Cpx(sigma * gauss(rng), sigma * gauss(rng));
        rec.samples[j] = base;
    }
    return rec;
}

MultiplexedStream synthesize_multiplexed(const std::vector<ShotRecord>& records,
                                         const std::vector<ChannelBand>& bands,
                                         const StreamConfig& cfg) {
    if (records.empty() || records.size() != bands.size())
        throw std::invalid_argument("synthesize_multiplexed: records/bands mismatch");
    if (cfg.quantization_bits < 8 || cfg.quantization_bits > 16)
        throw std::invalid_argument("synthesize_multiplexed: bits must be in [8,16]");
    if (cfg.sample_rate <= 0.0 || cfg.full_scale <= 0.0)
        throw std::invalid_argument("synthesize_multiplexed: invalid stream config");

    for (std::size_t a = 0; a < bands.size(); ++a)
        for (std::size_t b = a + 1; b < bands.size(); ++b)
            if (std::abs(bands[a].if_freq - bands[b].if_freq) <=
                0.5 * (bands[a].bandwidth + bands[b].bandwidth))
                throw std::invalid_argument("synthesize_multiplexed: overlapping channel bands");

    double max_band = 0.0;
    for (const auto& b : bands)
        max_band = std::max(max_band, b.if_freq + 0.5 * b.bandwidth);
    if (cfg.sample_rate <= 2.0 * max_band)
        throw std::invalid_argument("synthesize_multiplexed: sample rate below Nyquist");

    std::size_t rec_len = records.front().samples.size();
    double rec_period = records.front().sample_period;
    for (const auto& r : records)
        if (r.samples.size() != rec_len || r.sample_period != rec_period)
            throw std::invalid_argument("synthesize_multiplexed: records not uniform");

    double ratio = rec_period * cfg.sample_rate;
    auto up = std::size_t(std::llround(ratio));
    if (up < 1 || std::abs(ratio - double(up)) > 1e-9)
        throw std::invalid_argument("synthesize_multiplexed: record rate must divide stream rate");

    std::size_t n = rec_len * up;
    MultiplexedStream out;
    out.samples.assign(n, 0.0);
    out.sample_rate = cfg.sample_rate;
    out.quantization_bits = cfg.quantization_bits;
    for (const auto& b : bands) out.if_freqs.push_back(b.if_freq);

    const double two_pi = 2.0 * std::acos(-1.0);
    for (std::size_t c = 0; c < records.size(); ++c) {
        const auto& x = records[c].samples;
        double w = two_pi * bands[c].if_freq / cfg.sample_rate;
        // phasor recurrence with periodic resync to keep the LO exact
        Cpx step(std::cos(w), std::sin(w));
        Cpx lo(1.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            // linear interpolation between record samples when upsampling
            Cpx xv;
            if (up == 1) {
                xv = x[i];
            } else {
                double pos = double(i) / double(up);
                auto j = std::size_t(pos);
                double frac = pos - double(j);
                Cpx x1 = (j + 1 < rec_len) ? x[j + 1] : x[j];
                xv = (1.0 - frac) * x[j] + frac * x1;
            }
            out.samples[i] += xv.real() * lo.real() - xv.imag() * lo.imag();
            lo *= step;
            if ((i & 1023) == 1023) {
                double phase = w * double(i + 1);
                lo = Cpx(std::cos(phase), std::sin(phase));
            }
        }
    }

    double max_code = double((1 << (cfg.quantization_bits - 1)) - 1);
    double lsb = cfg.full_scale / max_code;
    for (auto& s : out.samples) {
        double code = std::round(s / lsb);
        if (code > max_code) {
            code = max_code;
            ++out.clipped_samples;
        } else if (code < -max_code) {
            code = -max_code;
            ++out.clipped_samples;
        }
        s = code * lsb;
    }
    return out;
}

}  // namespace corrtomo
