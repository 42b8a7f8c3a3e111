#ifndef CORRTOMO_CHANNELIZER_HPP
#define CORRTOMO_CHANNELIZER_HPP

#include <span>
#include <vector>

#include "corrtomo/readout.hpp"

namespace corrtomo {

/// Linear-phase FIR low-pass, DC gain normalized to 1.
struct FirFilter {
    enum class Window { Hamming };
    std::vector<double> taps;
    double cutoff_hz = 0.0;
    Window window = Window::Hamming;

    /// Output samples at each record edge affected by the zero-padded
    /// convolution transient, after decimation by `factor`.
    std::size_t transient_output_samples(int factor) const {
        std::size_t half = (taps.size() + 1) / 2;
        return (half + std::size_t(factor) - 1) / std::size_t(factor);
    }
};

struct ChannelConfig {
    double if_freq = 0.0;    // Hz
    double bandwidth = 0.0;  // Hz
    int decimation_factor = 1;
};

/// Hamming-windowed sinc. num_taps must be odd and >= 11.
FirFilter design_lowpass(double cutoff_hz, double sample_rate_hz, int num_taps);

/// |H(f)| of the filter at the given frequency.
double filter_response(const FirFilter& filter, double freq_hz, double sample_rate_hz);

/// Filter then keep every factor-th sample, compensating group delay so
/// an impulse at input sample k lands at floor(k/factor). Zero-padded
/// edges; output length ceil(n/factor).
std::vector<Cpx> decimate(std::span<const Cpx> stream, const FirFilter& filter,
                          int factor);
std::vector<double> decimate(std::span<const double> stream, const FirFilter& filter,
                             int factor);

/// Digital down-conversion: multiply by exp(-i 2 pi IF t), low-pass,
/// decimate. The factor 2 restores the complex baseband amplitude of a
/// real passband signal Re[x exp(i 2 pi IF t)].
ShotRecord extract_channel(const MultiplexedStream& stream, const ChannelConfig& cfg,
                           const FirFilter& filter, int channel_id = 0);

}  // namespace corrtomo

#endif
