#include "corrtomo/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace corrtomo {

EstimateResult soft_average(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("soft_average: empty value list");
    std::size_t r = values.size();
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= double(r);
    double var = 0.0;
    if (r > 1) {
        for (double v : values) var += (v - mean) * (v - mean);
        var /= double(r - 1);
    }
    return {mean, var / double(r), r};
}

EstimateResult threshold_estimate(std::span<const double> values,
                                  const EstimatorConfig& cfg) {
    if (values.empty())
        throw std::invalid_argument("threshold_estimate: empty value list");
    if (cfg.bias_factor <= 0.0)
        throw std::invalid_argument("threshold_estimate: bias factor must be > 0");
    std::size_t r = values.size();
    long above = 0;
    for (double v : values)
        if (v > cfg.threshold) ++above;
    double raw = (2.0 * double(above) - double(r)) / double(r);
    double f = cfg.bias_factor;
    return {raw / f, (1.0 - raw * raw) / (double(r) * f * f), r};
}

double predicted_soft_variance(double mean_sz, double nu2, std::size_t r) {
    if (std::abs(mean_sz) > 1.0)
        throw std::invalid_argument("predicted_soft_variance: |<sz>| > 1");
    return (nu2 + 1.0 - mean_sz * mean_sz) / double(r);
}

double gaussian_fidelity(double nu) {
    return std::erf(1.0 / (nu * std::sqrt(2.0)));
}

double predicted_threshold_variance(double mean_sz, double nu, std::size_t r) {
    if (nu <= 0.0)
        throw std::invalid_argument("predicted_threshold_variance: nu must be > 0");
    double f = gaussian_fidelity(nu);
    return 1.0 / (double(r) * f * f) - mean_sz * mean_sz / double(r);
}

std::pair<double, double> crossover_snr() {
    // root of 1/F(nu)^2 - nu^2 - 1; negative near nu=0, positive for large nu
    auto h = [](double nu) {
        double f = gaussian_fidelity(nu);
        return 1.0 / (f * f) - nu * nu - 1.0;
    };
    double lo = 0.1, hi = 10.0;
    for (int i = 0; i < 200 && hi - lo > 1e-9; ++i) {
        double mid = 0.5 * (lo + hi);
        (h(mid) < 0.0 ? lo : hi) = mid;
    }
    double nu = 0.5 * (lo + hi);
    return {1.0 / (nu * nu), gaussian_fidelity(nu)};
}

std::pair<std::vector<double>, EstimateResult> correlate(
    const std::vector<std::vector<double>>& channels) {
    if (channels.empty())
        throw std::invalid_argument("correlate: no channels");
    std::size_t r = channels.front().size();
    for (const auto& c : channels)
        if (c.size() != r)
            throw std::invalid_argument("correlate: shot count mismatch between channels");
    std::vector<double> products(r, 1.0);
    for (const auto& c : channels)
        for (std::size_t i = 0; i < r; ++i) products[i] *= c[i];
    EstimateResult est = soft_average(products);
    return {std::move(products), est};
}

double goodman_variance(std::span<const double> nu2s,
                        std::span<const double> means) {
    if (nu2s.empty() || nu2s.size() != means.size())
        throw std::invalid_argument("goodman_variance: length mismatch");
    double second = 1.0, first2 = 1.0;
    for (std::size_t k = 0; k < nu2s.size(); ++k) {
        second *= nu2s[k] + 1.0;
        first2 *= means[k] * means[k];
    }
    return second - first2;
}

double goodman_approx(int n, double snr) {
    if (snr <= 0.0)
        throw std::invalid_argument("goodman_approx: snr must be > 0");
    return double(n) / snr;
}

}  // namespace corrtomo
