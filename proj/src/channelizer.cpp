#include "corrtomo/channelizer.hpp"

#include <cmath>
#include <stdexcept>

namespace corrtomo {

FirFilter design_lowpass(double cutoff_hz, double sample_rate_hz, int num_taps) {
    if (cutoff_hz <= 0.0 || cutoff_hz >= sample_rate_hz / 2.0)
        throw std::invalid_argument("design_lowpass: cutoff must be in (0, fs/2)");
    if (num_taps < 11 || num_taps % 2 == 0)
        throw std::invalid_argument("design_lowpass: num_taps must be odd and >= 11");

    const double pi = std::acos(-1.0);
    double fc = cutoff_hz / sample_rate_hz;  // normalized
    int mid = (num_taps - 1) / 2;

    FirFilter filt;
    filt.taps.resize(std::size_t(num_taps));
    filt.cutoff_hz = cutoff_hz;
    double sum = 0.0;
    for (int k = 0; k < num_taps; ++k) {
        int m = k - mid;
        double sinc = (m == 0) ? 2.0 * fc : std::sin(2.0 * pi * fc * m) / (pi * m);
        double win = 0.54 - 0.46 * std::cos(2.0 * pi * k / (num_taps - 1));
        filt.taps[std::size_t(k)] = sinc * win;
        sum += filt.taps[std::size_t(k)];
    }
    for (auto& t : filt.taps) t /= sum;  // unit DC gain
    return filt;
}

double filter_response(const FirFilter& filter, double freq_hz, double sample_rate_hz) {
    const double pi = std::acos(-1.0);
    double w = 2.0 * pi * freq_hz / sample_rate_hz;
    Cpx h(0.0);
    for (std::size_t k = 0; k < filter.taps.size(); ++k)
        h += filter.taps[k] * std::exp(Cpx(0.0, -w * double(k)));
    return std::abs(h);
}

namespace {

template <typename T>
std::vector<T> decimate_impl(std::span<const T> stream,
                             const FirFilter& filter, int factor) {
    if (factor < 1)
        throw std::invalid_argument("decimate: factor must be >= 1");
    if (filter.taps.empty())
        throw std::invalid_argument("decimate: empty filter");

    auto n = std::ptrdiff_t(stream.size());
    auto taps = std::ptrdiff_t(filter.taps.size());
    std::ptrdiff_t delay = (taps - 1) / 2;

    std::vector<T> out;
    out.reserve(std::size_t((n + factor - 1) / factor));
    for (std::ptrdiff_t m = 0; m * factor < n; ++m) {
        std::ptrdiff_t center = m * factor + delay;
        std::ptrdiff_t k_lo = std::max<std::ptrdiff_t>(0, center - n + 1);
        std::ptrdiff_t k_hi = std::min(taps, center + 1);
        T acc{};
        for (std::ptrdiff_t k = k_lo; k < k_hi; ++k)
            acc += filter.taps[std::size_t(k)] * stream[std::size_t(center - k)];
        out.push_back(acc);
    }
    return out;
}

}  // namespace

std::vector<Cpx> decimate(std::span<const Cpx> stream, const FirFilter& filter,
                          int factor) {
    return decimate_impl(stream, filter, factor);
}

std::vector<double> decimate(std::span<const double> stream, const FirFilter& filter,
                             int factor) {
    return decimate_impl(stream, filter, factor);
}

ShotRecord extract_channel(const MultiplexedStream& stream, const ChannelConfig& cfg,
                           const FirFilter& filter, int channel_id) {
    if (cfg.if_freq < 0.0 || cfg.if_freq >= stream.sample_rate / 2.0)
        throw std::invalid_argument("extract_channel: IF outside the stream band");
    double out_nyquist = stream.sample_rate / (2.0 * cfg.decimation_factor);
    if (cfg.bandwidth > 2.0 * out_nyquist)
        throw std::invalid_argument("extract_channel: bandwidth exceeds output Nyquist");

    const double two_pi = 2.0 * std::acos(-1.0);
    double w = two_pi * cfg.if_freq / stream.sample_rate;
    Cpx step(std::cos(w), -std::sin(w));
    Cpx lo(2.0, 0.0);  // x2: recover complex amplitude from the real passband
    std::vector<Cpx> shifted(stream.samples.size());
    for (std::size_t i = 0; i < stream.samples.size(); ++i) {
        shifted[i] = stream.samples[i] * lo;
        lo *= step;
        if ((i & 1023) == 1023) {
            double phase = -w * double(i + 1);
            lo = 2.0 * Cpx(std::cos(phase), std::sin(phase));
        }
    }

    ShotRecord rec;
    rec.samples = decimate(std::span<const Cpx>(shifted), filter, cfg.decimation_factor);
    rec.sample_period = double(cfg.decimation_factor) / stream.sample_rate;
    rec.channel_id = channel_id;
    return rec;
}

}  // namespace corrtomo
