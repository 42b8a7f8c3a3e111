#include <doctest.h>

#include <cmath>
#include <numbers>

#include "corrtomo/pipeline.hpp"

using namespace corrtomo;

namespace {

ReadoutSimConfig small_config() {
    ReadoutSimConfig cfg;
    cfg.duration = 1e-6;
    cfg.channels[0].if_freq = 10e6;
    cfg.channels[1].if_freq = 20e6;
    return cfg;
}

}  // namespace

TEST_CASE("noiseless baseband separates the qubit states") {
    TwoQubitReadoutSim sim(small_config());
    auto g = sim.noiseless_baseband(0, {0, 0});
    auto e = sim.noiseless_baseband(0, {1, 0});
    REQUIRE(g.size() == e.size());
    double sep = 0.0, mag = 0.0;
    for (std::size_t j = g.size() / 2; j < g.size(); ++j) {
        sep += std::abs(g[j] - e[j]);
        mag += std::abs(g[j]);
    }
    CHECK(sep > 0.5 * mag);

    // the other qubit's state barely moves this channel (no cross-chi)
    auto e2 = sim.noiseless_baseband(0, {0, 1});
    double cross = 0.0;
    for (std::size_t j = g.size() / 2; j < g.size(); ++j)
        cross += std::abs(g[j] - e2[j]);
    CHECK(cross < 0.05 * sep);
}

TEST_CASE("calibration anchors basis means near +-1") {
    TwoQubitReadoutSim sim(small_config());
    sim.calibrate(400, 17);
    REQUIRE(sim.calibrated());

    // channel 0 reads qubit 1: means (+1, +1, -1, -1) across (00,01,10,11)
    RealVector m0 = sim.basis_means(0);
    CHECK(m0(0) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(m0(1) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(m0(2) == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(m0(3) == doctest::Approx(-1.0).epsilon(0.05));
    RealVector m1 = sim.basis_means(1);
    CHECK(m1(0) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(m1(1) == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(m1(2) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(m1(3) == doctest::Approx(-1.0).epsilon(0.05));

    // fitted measurement operators are dominated by ZI / IZ / ZZ
    const auto& ops = sim.measurement_operators();
    REQUIRE(ops.size() == 3);
    CHECK(ops[0].z_coeffs(2) == doctest::Approx(1.0).epsilon(0.08));  // ZI
    CHECK(ops[1].z_coeffs(1) == doctest::Approx(1.0).epsilon(0.08));  // IZ
    CHECK(ops[2].z_coeffs(3) == doctest::Approx(1.0).epsilon(0.12));  // ZZ

    // measurement values reproducible for a fixed seed
    std::vector<std::array<int, 2>> outcomes(64, {0, 1});
    auto v1 = sim.measure(outcomes, 23);
    auto v2 = sim.measure(outcomes, 23);
    CHECK(v1.channel[0] == v2.channel[0]);
    CHECK(v1.product == v2.product);

    CHECK_THROWS(sim.calibrate(50, 1));  // too few shots
}

TEST_CASE("sample_outcomes follows diag(rho)") {
    TwoQubitReadoutSim sim(small_config());
    Matrix rho = Matrix::Zero(4, 4);
    rho(0, 0) = 0.5;
    rho(3, 3) = 0.5;
    auto outcomes = sim.sample_outcomes(rho, 4000, 31);
    std::size_t n00 = 0, n11 = 0;
    for (const auto& o : outcomes) {
        if (o[0] == 0 && o[1] == 0) ++n00;
        if (o[0] == 1 && o[1] == 1) ++n11;
    }
    CHECK(n00 + n11 == outcomes.size());
    CHECK(double(n00) / double(outcomes.size()) == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("noise tuning reaches the requested variances") {
    TwoQubitReadoutSim sim(small_config());
    tune_noise_to_variance(sim, {0.42, 1.36}, 1500, 37);
    sim.calibrate(1500, 41);
    CHECK(sim.basis_variances(0)(0) == doctest::Approx(0.42).epsilon(0.15));
    CHECK(sim.basis_variances(1)(0) == doctest::Approx(1.36).epsilon(0.15));
}

TEST_CASE("shot value model statistics") {
    ShotValueModel m = ShotValueModel::ideal({0.5, 0.8});
    Matrix rho = Matrix::Zero(4, 4);
    rho(1, 1) = 1.0;  // |01>: channel 0 up, channel 1 down
    auto v = m.sample(rho, 20000, 43);
    double mean0 = 0.0, mean1 = 0.0;
    for (double x : v.channel[0]) mean0 += x;
    for (double x : v.channel[1]) mean1 += x;
    mean0 /= double(v.channel[0].size());
    mean1 /= double(v.channel[1].size());
    CHECK(mean0 == doctest::Approx(1.0).epsilon(0.02));
    CHECK(mean1 == doctest::Approx(-1.0).epsilon(0.02));
}
