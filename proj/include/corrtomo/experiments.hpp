#ifndef CORRTOMO_EXPERIMENTS_HPP
#define CORRTOMO_EXPERIMENTS_HPP

#include <array>
#include <cstdint>

#include "corrtomo/pipeline.hpp"
#include "corrtomo/tomography.hpp"

namespace corrtomo {

/// Two-qubit state tomography through the full simulated chain:
/// records -> channelizer -> matched filter -> shot correlation -> GLS.
struct StateTomoExperiment {
    StateTomographyResult tomo;
    RealVector pauli_coeffs;   // of the reconstructed state
    RealVector pauli_errors;   // propagated standard errors
    double fidelity = 0.0;     // <psi_true| rho |psi_true>
    std::array<double, 2> nu2_00{};  // calibrated |00> variances
    std::vector<MeasurementOperator> meas_ops;
};

/// `rho_true` must be (numerically) pure; its dominant eigenvector is
/// the fidelity reference. target_nu2 sets the |00> post-filter
/// variances via noise tuning.
StateTomoExperiment run_state_tomo_experiment(const ReadoutSimConfig& cfg,
                                              std::array<double, 2> target_nu2,
                                              std::size_t cal_shots,
                                              std::size_t shots_per_config,
                                              const Matrix& rho_true,
                                              std::uint64_t seed);

struct ProcessTomoExperiment {
    ProcessTomographyResult tomo;
    double process_fidelity = 0.0;  // vs the ideal gate PTM
    double avg_gate_fidelity = 0.0;
};

/// Two-qubit process tomography of a unitary gate from Gaussian
/// filtered shot values (the estimation/tomography stages end to end).
ProcessTomoExperiment run_process_tomo_experiment(const ShotValueModel& model,
                                                  const Matrix& gate,
                                                  std::size_t shots_per_config,
                                                  std::uint64_t seed);

/// Same reconstruction with exact expectation values and uniform weights.
ProcessTomoExperiment run_process_tomo_noiseless(const Matrix& gate);

/// Input states of the entangled-state demonstrations, trace-normalized:
/// "00", "y-z+" for (I-Y)⊗(I+Z)/4, "x-y+" for (I-X)⊗(I+Y)/4.
Matrix named_input_state(const std::string& name);

/// Dominant eigenvector, for fidelity against a (numerically) pure rho.
Vector dominant_eigenvector(const Matrix& rho);

}  // namespace corrtomo

#endif
