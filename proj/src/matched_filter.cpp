#include "corrtomo/matched_filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace corrtomo {

namespace {

struct CalStats {
    std::vector<Cpx> mean_ground, mean_excited;
    std::vector<double> nu2;  // pooled residual variance, both quadratures
};

std::size_t checked_length(const CalibrationSet& cal) {
    if (cal.ground_shots.size() < 100 || cal.excited_shots.size() < 100)
        throw std::invalid_argument("calibration needs at least 100 shots per state");
    std::size_t len = cal.ground_shots.front().size();
    if (len == 0)
        throw std::invalid_argument("calibration shots are empty");
    for (const auto& s : cal.ground_shots)
        if (s.size() != len)
            throw std::invalid_argument("calibration shot length mismatch");
    for (const auto& s : cal.excited_shots)
        if (s.size() != len)
            throw std::invalid_argument("calibration shot length mismatch");
    return len;
}

CalStats calibration_stats(const CalibrationSet& cal) {
    std::size_t len = checked_length(cal);
    CalStats st;
    st.mean_ground.assign(len, Cpx(0.0));
    st.mean_excited.assign(len, Cpx(0.0));
    for (const auto& s : cal.ground_shots)
        for (std::size_t j = 0; j < len; ++j) st.mean_ground[j] += s[j];
    for (const auto& s : cal.excited_shots)
        for (std::size_t j = 0; j < len; ++j) st.mean_excited[j] += s[j];
    double n0 = double(cal.ground_shots.size());
    double n1 = double(cal.excited_shots.size());
    for (std::size_t j = 0; j < len; ++j) {
        st.mean_ground[j] /= n0;
        st.mean_excited[j] /= n1;
    }

    st.nu2.assign(len, 0.0);
    for (const auto& s : cal.ground_shots)
        for (std::size_t j = 0; j < len; ++j)
            st.nu2[j] += std::norm(s[j] - st.mean_ground[j]);
    for (const auto& s : cal.excited_shots)
        for (std::size_t j = 0; j < len; ++j)
            st.nu2[j] += std::norm(s[j] - st.mean_excited[j]);
    for (auto& v : st.nu2) v /= (n0 + n1 - 2.0);
    return st;
}

double raw_response(std::span<const Cpx> shot, const Kernel& k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < k.window_end; ++j) {
        Cpx d = shot[j] - k.baseline[j];
        acc += k.weights[j].real() * d.real() - k.weights[j].imag() * d.imag();
    }
    return acc;
}

// Anchors mean ground -> +1 and mean excited -> -1 for the current window.
void calibrate_scale(const CalStats& st, Kernel& k) {
    double r0 = raw_response(st.mean_ground, k);
    double r1 = raw_response(st.mean_excited, k);
    if (r0 == r1)
        throw std::invalid_argument("estimate_kernel: no ground/excited separation");
    k.scale = 2.0 / (r0 - r1);
    k.offset = -k.scale * (r0 + r1) / 2.0;
}

}  // namespace

Kernel estimate_kernel(const CalibrationSet& cal) {
    CalStats st = calibration_stats(cal);
    std::size_t len = st.nu2.size();

    // Degenerate sigma=0 calibration: fall back to uniform weighting.
    double min_nu2 = *std::min_element(st.nu2.begin(), st.nu2.end());
    bool uniform = min_nu2 <= 0.0;

    Kernel k;
    k.weights.resize(len);
    k.baseline.resize(len);
    k.window_end = len;
    for (std::size_t j = 0; j < len; ++j) {
        Cpx d = st.mean_ground[j] - st.mean_excited[j];
        k.weights[j] = std::conj(d) / (uniform ? 1.0 : st.nu2[j]);
        k.baseline[j] = 0.5 * (st.mean_ground[j] + st.mean_excited[j]);
    }
    calibrate_scale(st, k);
    return k;
}

double apply_kernel(std::span<const Cpx> shot, const Kernel& k) {
    if (shot.size() < k.window_end)
        throw std::invalid_argument("apply_kernel: shot shorter than kernel window");
    return k.scale * raw_response(shot, k) + k.offset;
}

double single_shot_fidelity(std::span<const double> values0,
                            std::span<const double> values1) {
    if (values0.empty() || values1.empty())
        throw std::invalid_argument("single_shot_fidelity: empty value list");
    std::vector<double> a(values0.begin(), values0.end());
    std::vector<double> b(values1.begin(), values1.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = double(a.size()), nb = double(b.size());
    std::size_t i = 0, j = 0;
    double best = 0.0;
    while (i < a.size() && j < b.size()) {
        // advance past ties on both sides before comparing the CDFs
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        best = std::max(best, std::abs(double(i) / na - double(j) / nb));
    }
    return best;
}

std::size_t optimize_window(const CalibrationSet& cal, Kernel& k,
                            std::size_t stride) {
    if (stride == 0) stride = 1;
    CalStats st = calibration_stats(cal);
    std::size_t len = k.weights.size();
    if (st.nu2.size() != len)
        throw std::invalid_argument("optimize_window: kernel/calibration length mismatch");

    std::vector<double> acc0(cal.ground_shots.size(), 0.0);
    std::vector<double> acc1(cal.excited_shots.size(), 0.0);
    double best_fid = -1.0;
    std::size_t best_end = len;
    for (std::size_t e = 1; e <= len; ++e) {
        std::size_t j = e - 1;
        Cpx w = k.weights[j];
        Cpx mu = k.baseline[j];
        for (std::size_t s = 0; s < acc0.size(); ++s) {
            Cpx d = cal.ground_shots[s][j] - mu;
            acc0[s] += w.real() * d.real() - w.imag() * d.imag();
        }
        for (std::size_t s = 0; s < acc1.size(); ++s) {
            Cpx d = cal.excited_shots[s][j] - mu;
            acc1[s] += w.real() * d.real() - w.imag() * d.imag();
        }
        if (e % stride == 0 || e == len) {
            double fid = single_shot_fidelity(acc0, acc1);
            if (fid > best_fid) {
                best_fid = fid;
                best_end = e;
            }
        }
    }

    k.window_end = best_end;
    calibrate_scale(st, k);
    return best_end;
}

double separation_snr(std::span<const double> values0,
                      std::span<const double> values1) {
    auto stats = [](std::span<const double> v) {
        double m = 0.0;
        for (double x : v) m += x;
        m /= double(v.size());
        double var = 0.0;
        for (double x : v) var += (x - m) * (x - m);
        var /= double(v.size() - 1);
        return std::pair{m, var};
    };
    auto [m0, v0] = stats(values0);
    auto [m1, v1] = stats(values1);
    return (m0 - m1) * (m0 - m1) / (v0 + v1);
}

double analytic_optimal_snr(const CalibrationSet& cal) {
    CalStats st = calibration_stats(cal);
    double snr = 0.0;
    for (std::size_t j = 0; j < st.nu2.size(); ++j) {
        if (st.nu2[j] <= 0.0) continue;
        snr += std::norm(st.mean_ground[j] - st.mean_excited[j]) / st.nu2[j];
    }
    return snr;
}

}  // namespace corrtomo
