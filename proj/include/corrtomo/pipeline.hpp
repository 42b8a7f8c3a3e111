#ifndef CORRTOMO_PIPELINE_HPP
#define CORRTOMO_PIPELINE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "corrtomo/channelizer.hpp"
#include "corrtomo/matched_filter.hpp"
#include "corrtomo/quantum.hpp"
#include "corrtomo/readout.hpp"
#include "corrtomo/tomography.hpp"

namespace corrtomo {

/// One readout channel of the two-qubit simulation. Rates in rad/s,
/// frequencies in Hz, times in seconds.
struct ReadoutChannelParams {
    double kappa = 2 * 3.14159265358979323846 * 1e6;
    double chi = 2 * 3.14159265358979323846 * 1e6;
    double cross_chi = 0.0;  // dispersive pull from the other qubit
    double detuning = 0.0;
    double drive_amp = 0.0;  // 0 = kappa/2
    double t1 = 20e-6;
    double sigma_per_sample = 0.1;  // per quadrature, at the record rate
    double if_freq = 0.0;
    double bandwidth = 3e6;  // ~(2 chi + kappa)/2pi for the defaults
};

struct ReadoutSimConfig {
    std::array<ReadoutChannelParams, 2> channels{};
    double sample_rate = 500e6;
    double duration = 2e-6;
    int stage1_decimation = 5;   // real decimating FIR on the raw stream
    int stage2_decimation = 4;   // frequency-shifting channel extraction
    int fir_taps = 127;
    int quantization_bits = 8;
    double full_scale = 0.0;  // 0 = auto from traces and noise level
    unsigned threads = 1;
};

/// Full software readout chain for two multiplexed channels: cavity
/// transients -> noisy shot records -> multiplexed quantized stream ->
/// decimating FIR -> frequency-shifting extraction -> matched filter.
class TwoQubitReadoutSim {
public:
    explicit TwoQubitReadoutSim(const ReadoutSimConfig& cfg);

    /// Runs the four computational-basis ensembles through the chain,
    /// builds per-channel kernels (window optimized with the given
    /// stride), anchors them to +-1, and fits the measurement operators
    /// M1, M2, M12 from the basis means.
    void calibrate(std::size_t shots_per_state, std::uint64_t seed,
                   std::size_t window_stride = 4);

    struct Values {
        std::array<std::vector<double>, 2> channel;
        std::vector<double> product;
    };

    /// Filtered shot values for a batch of joint outcomes (b1, b2).
    /// Deterministic given the seed; parallel over shots.
    Values measure(std::span<const std::array<int, 2>> outcomes,
                   std::uint64_t seed) const;

    /// Samples joint computational-basis outcomes from diag(rho).
    std::vector<std::array<int, 2>> sample_outcomes(const Matrix& rho,
                                                    std::size_t shots,
                                                    std::uint64_t seed) const;

    /// Complex baseband records of one shot, per channel (pre-filter).
    std::array<std::vector<Cpx>, 2> baseband_shot(std::array<int, 2> outcome,
                                                  std::uint64_t seed) const;

    bool calibrated() const { return calibrated_; }
    const Kernel& kernel(int channel) const { return kernels_[check(channel)]; }
    /// M1, M2, M12 as fitted from calibration.
    const std::vector<MeasurementOperator>& measurement_operators() const {
        return meas_ops_;
    }
    /// Mean / variance of the filtered value per basis state (00,01,10,11).
    const RealVector& basis_means(int channel) const { return basis_means_[check(channel)]; }
    const RealVector& basis_variances(int channel) const { return basis_vars_[check(channel)]; }
    const RealVector& product_means() const { return prod_means_; }
    const RealVector& product_variances() const { return prod_vars_; }

    double sigma(int channel) const { return cfg_.channels[check(channel)].sigma_per_sample; }
    void set_sigma(int channel, double sigma) {
        cfg_.channels[check(channel)].sigma_per_sample = sigma;
        calibrated_ = false;
        update_full_scale();
    }
    double drive_amp(int channel) const;
    /// Changing the drive rescales the cavity traces and the auto full
    /// scale; calibration is invalidated.
    void set_drive_amp(int channel, double amp);
    const ReadoutSimConfig& config() const { return cfg_; }

    /// Noiseless DSP-chain output for a given joint basis state.
    std::vector<Cpx> noiseless_baseband(int channel, std::array<int, 2> outcome) const;

private:
    static std::size_t check(int channel);
    std::vector<Cpx> record_trace(int channel, int own, int other) const;
    void update_full_scale();

    ReadoutSimConfig cfg_;
    FirFilter stage1_, stage2_;
    double full_scale_ = 1.0;
    // raw-rate cavity traces, [channel][own][other]
    std::array<std::array<std::array<std::vector<Cpx>, 2>, 2>, 2> traces_;
    std::array<Kernel, 2> kernels_;
    std::array<RealVector, 2> basis_means_, basis_vars_;
    RealVector prod_means_, prod_vars_;
    std::vector<MeasurementOperator> meas_ops_;
    bool calibrated_ = false;
};

/// Scales each channel's drive amplitude so the |00> post-filter
/// variance lands on the target (e.g. 0.42 / 1.36). The digitizer noise
/// floor is shared across channels, so amplitude is the only knob that
/// can set the two variances independently. Iterates pilot calibrations
/// until both are within 5%; leaves the sim uncalibrated.
void tune_noise_to_variance(TwoQubitReadoutSim& sim,
                            std::array<double, 2> target_nu2,
                            std::size_t pilot_shots, std::uint64_t seed);

/// Gaussian shot-value model at the filtered-output level, used where
/// the DSP chain itself is not under test (process tomography, variance
/// sweeps). Means and per-basis std devs indexed by joint basis state.
struct ShotValueModel {
    std::array<RealVector, 2> basis_means;  // length 4 each
    std::array<RealVector, 2> basis_sigmas;

    /// Values for outcomes sampled from diag(rho).
    TwoQubitReadoutSim::Values sample(const Matrix& rho, std::size_t shots,
                                      std::uint64_t seed) const;

    /// Ideal +-1 means with per-basis sigmas derived from a calibrated sim.
    static ShotValueModel from_sim(const TwoQubitReadoutSim& sim);
    /// Ideal +-1 means, constant nu per channel.
    static ShotValueModel ideal(std::array<double, 2> nu);
};

}  // namespace corrtomo

#endif
