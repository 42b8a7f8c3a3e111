#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "corrtomo/readout.hpp"
#include "corrtomo/rng.hpp"

using namespace corrtomo;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

CavityParams default_cavity(double eps) {
    CavityParams p;
    p.kappa = kTwoPi * 1e6;
    p.chi = kTwoPi * 1e6;
    p.detuning = 0.0;
    p.sample_period = 2e-9;
    p.drive_envelope = [eps](double) { return Cpx(eps, 0.0); };
    return p;
}

// single-bin DFT magnitude
double tone_power(std::span<const double> x, double freq, double rate) {
    Cpx acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        acc += x[j] * std::exp(Cpx(0.0, -kTwoPi * freq * double(j) / rate));
    return std::norm(acc) / double(x.size() * x.size());
}

}  // namespace

TEST_CASE("cavity_response") {
    CavityParams quiet = default_cavity(0.0);
    auto trace = cavity_response(quiet, 0, 1e-6);
    for (const Cpx& a : trace) CHECK(std::abs(a) == doctest::Approx(0.0));

    CavityParams p = default_cavity(kTwoPi * 0.5e6);
    double duration = 20e-6;  // >> 10/kappa = 1.6 us
    for (int s : {0, 1}) {
        auto t = cavity_response(p, s, duration);
        Cpx steady = Cpx(kTwoPi * 0.5e6, 0.0) /
                     (p.kappa / 2.0 + Cpx(0.0, 1.0) * (s ? -p.chi : p.chi));
        CHECK(std::abs(t.back() - steady) < 1e-6);
    }

    CavityParams sym = default_cavity(kTwoPi * 0.5e6);
    sym.chi = 0.0;
    auto t0 = cavity_response(sym, 0, 1e-6);
    auto t1 = cavity_response(sym, 1, 1e-6);
    for (std::size_t j = 0; j < t0.size(); ++j) CHECK(t0[j] == t1[j]);
}

TEST_CASE("generate_shot") {
    CavityParams p = default_cavity(kTwoPi * 0.5e6);
    auto a0 = cavity_response(p, 0, 2e-6);
    auto a1 = cavity_response(p, 1, 2e-6);

    NoiseParams clean{0.0, std::numeric_limits<double>::infinity()};
    ShotRecord g = generate_shot(a0, a1, 0, clean, 1, p.sample_period);
    for (std::size_t j = 0; j < a0.size(); ++j) CHECK(g.samples[j] == a0[j]);
    ShotRecord e = generate_shot(a0, a1, 1, clean, 2, p.sample_period);
    for (std::size_t j = 0; j < a1.size(); ++j) CHECK(e.samples[j] == a1[j]);

    // same seed, bit-identical records
    NoiseParams noisy{0.3, 20e-6};
    ShotRecord r1 = generate_shot(a0, a1, 1, noisy, 77, p.sample_period);
    ShotRecord r2 = generate_shot(a0, a1, 1, noisy, 77, p.sample_period);
    for (std::size_t j = 0; j < r1.samples.size(); ++j)
        CHECK(r1.samples[j] == r2.samples[j]);

    // survival fraction of excited shots follows the exponential law
    double t1 = 4e-6, duration = 2e-6;
    NoiseParams decay{0.0, t1};
    std::size_t shots = 10000, survived = 0;
    for (std::size_t i = 0; i < shots; ++i) {
        ShotRecord s = generate_shot(a0, a1, 1, decay, derive_seed(5, i),
                                     p.sample_period);
        if (s.samples.back() == a1.back()) ++survived;
    }
    double pred = std::exp(-duration / t1);
    double sigma = std::sqrt(pred * (1.0 - pred) / double(shots));
    CHECK(std::abs(double(survived) / double(shots) - pred) < 3.0 * sigma);

    std::vector<Cpx> short_trace(a0.begin(), a0.begin() + 10);
    CHECK_THROWS(generate_shot(short_trace, a1, 0, clean, 1, p.sample_period));
}

TEST_CASE("excited ensemble mean tracks the decay model") {
    CavityParams p = default_cavity(kTwoPi * 0.5e6);
    double duration = 1e-6;
    auto a0 = cavity_response(p, 0, duration);
    auto a1 = cavity_response(p, 1, duration);
    double t1 = 2e-6;
    NoiseParams noise{0.05, t1};

    std::size_t shots = 10000;
    std::vector<Cpx> mean(a0.size(), 0.0);
    for (std::size_t i = 0; i < shots; ++i) {
        ShotRecord s = generate_shot(a0, a1, 1, noise, derive_seed(9, i),
                                     p.sample_period);
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += s.samples[j];
    }
    for (auto& m : mean) m /= double(shots);

    // prediction: alpha1 while surviving; decayed shots follow a
    // re-converging ground trajectory bounded between a0 and a1, so only
    // check the survival-weighted pull toward a0 at a coarse tolerance
    std::size_t j = mean.size() - 1;
    double surv = std::exp(-p.sample_period * double(j) / t1);
    Cpx lo = a1[j], hi = a0[j];
    Cpx pred = surv * lo + (1.0 - surv) * hi;
    CHECK(std::abs(mean[j] - pred) < 0.1 * std::abs(hi - lo));
}

TEST_CASE("synthesize_multiplexed") {
    double rate = 500e6;
    std::size_t n = 5000;
    ShotRecord rec;
    rec.sample_period = 1.0 / rate;
    rec.samples.assign(n, Cpx(1.0, 0.0));

    StreamConfig cfg{rate, 12, 1.5};
    MultiplexedStream one = synthesize_multiplexed({rec}, {{10e6, 3e6}}, cfg);
    double lsb = 2.0 * cfg.full_scale / ((1 << 12) - 1);
    for (std::size_t j = 0; j < n; ++j) {
        double expect = std::cos(kTwoPi * 10e6 * double(j) / rate);
        CHECK(std::abs(one.samples[j] - expect) <= lsb);
    }

    // two channels: spectrum concentrates at the IFs
    ShotRecord rec2 = rec;
    MultiplexedStream two =
        synthesize_multiplexed({rec, rec2}, {{10e6, 3e6}, {20e6, 3e6}}, cfg);
    double p10 = tone_power(two.samples, 10e6, rate);
    double p20 = tone_power(two.samples, 20e6, rate);
    double p15 = tone_power(two.samples, 15e6, rate);
    double p33 = tone_power(two.samples, 33e6, rate);
    CHECK(p10 > 1e4 * p15);
    CHECK(p20 > 1e4 * p33);

    // quantization noise scales with bit depth
    auto rng = make_rng(4);
    std::normal_distribution<double> g(0.0, 0.2);
    ShotRecord smooth;
    smooth.sample_period = 1.0 / rate;
    smooth.samples.resize(n);
    double ph = 0.0;
    for (auto& s : smooth.samples) {
        ph += 0.001;
        s = Cpx(0.5 * std::cos(ph), 0.5 * std::sin(ph));
    }
    StreamConfig c8{rate, 8, 1.5}, c16{rate, 16, 1.5};
    auto s8 = synthesize_multiplexed({smooth}, {{10e6, 3e6}}, c8);
    auto s16 = synthesize_multiplexed({smooth}, {{10e6, 3e6}}, c16);
    double e8 = 0.0, e16 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double ideal = (smooth.samples[j] *
                        std::exp(Cpx(0.0, kTwoPi * 10e6 * double(j) / rate)))
                           .real();
        e8 += (s8.samples[j] - ideal) * (s8.samples[j] - ideal);
        e16 += (s16.samples[j] - ideal) * (s16.samples[j] - ideal);
    }
    double ratio = std::sqrt(e8 / e16);
    CHECK(ratio == doctest::Approx(256.0).epsilon(0.20));

    // overlapping bands rejected
    CHECK_THROWS(synthesize_multiplexed({rec, rec2}, {{10e6, 3e6}, {12e6, 3e6}}, cfg));

    // clipping is reported, not silent
    StreamConfig tiny{rate, 8, 0.25};
    auto clipped = synthesize_multiplexed({rec}, {{10e6, 3e6}}, tiny);
    CHECK(clipped.clipped_samples > 0);
}
