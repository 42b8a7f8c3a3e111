#ifndef CORRTOMO_READOUT_HPP
#define CORRTOMO_READOUT_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace corrtomo {

using Cpx = std::complex<double>;

/// Dispersive readout cavity, all rates in rad/s.
struct CavityParams {
    double kappa = 0.0;      // cavity linewidth
    double chi = 0.0;        // dispersive shift (own qubit)
    double detuning = 0.0;   // drive vs bare cavity
    double sample_period = 0.0;
    std::function<Cpx(double)> drive_envelope;
};

struct NoiseParams {
    double sigma_per_sample = 0.0;  // std per quadrature per sample
    double t1 = std::numeric_limits<double>::infinity();
};

/// Complex baseband time series of one measurement shot of one channel.
struct ShotRecord {
    std::vector<Cpx> samples;
    double sample_period = 0.0;
    int channel_id = 0;
};

struct ChannelBand {
    double if_freq = 0.0;    // Hz
    double bandwidth = 0.0;  // Hz
};

struct StreamConfig {
    double sample_rate = 0.0;  // Hz, digitizer rate
    int quantization_bits = 8;
    double full_scale = 1.0;   // quantizer covers [-full_scale, full_scale]
};

/// Real multiplexed digitizer stream.
struct MultiplexedStream {
    std::vector<double> samples;
    double sample_rate = 0.0;
    int quantization_bits = 0;
    std::vector<double> if_freqs;
    std::size_t clipped_samples = 0;  // reported, caller decides severity
};

/// Integrates d(alpha)/dt = -i(Delta + (-1)^s chi) alpha - (kappa/2) alpha + eps(t)
/// with fixed-step RK4 at the sample period. Returns alpha at each sample,
/// starting from alpha(0) = 0.
std::vector<Cpx> cavity_response(const CavityParams& params, int qubit_state,
                                 double duration);

/// One noisy shot. Excited preparations draw a T1 jump time; the record
/// follows alpha1 before the jump and alpha0 after. Ground is stable.
/// Deterministic given the seed.
ShotRecord generate_shot(std::span<const Cpx> alpha0, std::span<const Cpx> alpha1,
                         int prepared_state, const NoiseParams& noise,
                         std::uint64_t seed, double sample_period,
                         int channel_id = 0);

/// Real stream sum_c Re[x_c(t) exp(i 2 pi IF_c t)], linearly upsampled to
/// the digitizer rate and uniformly quantized. Channel bands must be
/// disjoint: |IF_a - IF_b| > (bw_a + bw_b)/2.
MultiplexedStream synthesize_multiplexed(const std::vector<ShotRecord>& records,
                                         const std::vector<ChannelBand>& bands,
                                         const StreamConfig& cfg);

}  // namespace corrtomo

#endif
