#ifndef CORRTOMO_MATCHED_FILTER_HPP
#define CORRTOMO_MATCHED_FILTER_HPP

#include <complex>
#include <span>
#include <vector>

#include "corrtomo/readout.hpp"

namespace corrtomo {

/// Ground/excited ensembles used to derive the filter. Both lists must
/// hold at least 100 shots of uniform length.
struct CalibrationSet {
    std::vector<std::vector<Cpx>> ground_shots;
    std::vector<std::vector<Cpx>> excited_shots;
};

/// Matched-filter kernel K_j = conj(D_j)/nu_j^2 with D the mean
/// ground-excited difference and nu_j^2 the pooled per-sample residual
/// variance over both quadratures. The baseline mu_j (mean response) is
/// subtracted before integration to remove the identity component;
/// scale/offset anchor the calibration means at +1 (ground) and -1
/// (excited).
struct Kernel {
    std::vector<Cpx> weights;
    std::vector<Cpx> baseline;
    std::size_t window_end = 0;
    double scale = 1.0;
    double offset = 0.0;
};

Kernel estimate_kernel(const CalibrationSet& cal);

/// S = scale * Re[sum_{j<window_end} K_j (psi_j - mu_j)] + offset
double apply_kernel(std::span<const Cpx> shot, const Kernel& k);

/// Kolmogorov separation of the two empirical CDFs, max_t |F0 - F1|.
double single_shot_fidelity(std::span<const double> values0,
                            std::span<const double> values1);

/// Sweeps candidate window ends (every `stride` samples), picks the one
/// maximizing single-shot fidelity of the filtered calibration outputs,
/// and re-anchors scale/offset for that window. Returns the chosen end.
std::size_t optimize_window(const CalibrationSet& cal, Kernel& k,
                            std::size_t stride = 1);

/// Separation SNR (m0 - m1)^2 / (v0 + v1) of two filtered-value sets.
double separation_snr(std::span<const double> values0,
                      std::span<const double> values1);

/// Analytic matched-filter optimum sum_j |D_j|^2 / nu_j^2 from the
/// calibration statistics; comparable to separation_snr of the outputs.
double analytic_optimal_snr(const CalibrationSet& cal);

}  // namespace corrtomo

#endif
