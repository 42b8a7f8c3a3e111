#ifndef CORRTOMO_ESTIMATION_HPP
#define CORRTOMO_ESTIMATION_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace corrtomo {

struct EstimateResult {
    double mean = 0.0;
    double variance = 0.0;  // variance of the mean
    std::size_t shots_used = 0;
};

struct EstimatorConfig {
    enum class Mode { Soft, Threshold };
    Mode mode = Mode::Soft;
    double threshold = 0.0;
    double bias_factor = 1.0;  // F, from calibration, in (0,1]
};

/// Sample mean and variance-of-mean of filtered shot values.
EstimateResult soft_average(std::span<const double> values);

/// Threshold counting with bias rescaling: raw = (#above - #below)/R,
/// mean = raw/F, variance = (1 - raw^2) / (R F^2).
EstimateResult threshold_estimate(std::span<const double> values,
                                  const EstimatorConfig& cfg);

/// (nu^2 + 1 - <sz>^2) / R
double predicted_soft_variance(double mean_sz, double nu2, std::size_t r);

/// 1/(R F^2) - <sz>^2/R with F = 2 Phi(1/nu) - 1 = erf(1/(nu sqrt(2))).
double predicted_threshold_variance(double mean_sz, double nu, std::size_t r);

/// Gaussian single-shot fidelity 2 Phi(1/nu) - 1 for means +-1, std nu.
double gaussian_fidelity(double nu);

/// Solves 1/F(nu)^2 = nu^2 + 1 for the soft/threshold variance crossover.
/// Returns (SNR = 1/nu^2, fidelity F) ~ (1.41, 0.76).
std::pair<double, double> crossover_snr();

/// Shot-by-shot products across channels plus their soft average.
/// Channels must be aligned by shot index; length mismatch is an error.
std::pair<std::vector<double>, EstimateResult> correlate(
    const std::vector<std::vector<double>>& channels);

/// Goodman variance of a product of independent records:
/// prod_k(nu_k^2 + 1) - prod_k <sz_k>^2.
double goodman_variance(std::span<const double> nu2s,
                        std::span<const double> means);

/// High-SNR approximation N/SNR, valid for 1/SNR << 1.
double goodman_approx(int n, double snr);

}  // namespace corrtomo

#endif
