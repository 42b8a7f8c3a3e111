#ifndef CORRTOMO_TOMOGRAPHY_HPP
#define CORRTOMO_TOMOGRAPHY_HPP

#include <string>
#include <vector>

#include "corrtomo/quantum.hpp"

namespace corrtomo {

/// Diagonal observable expressed over the 2^n diagonal Pauli strings
/// ({I,Z}^n, lexicographic: II, IZ, ZI, ZZ, ...).
struct MeasurementOperator {
    int n_qubits = 0;
    RealVector z_coeffs;

    Matrix to_operator() const;
    static std::vector<std::string> labels(int n_qubits);
};

/// Coefficients of the diagonal observable whose computational-basis
/// expectation values are `basis_means` (length 2^n), via the Walsh
/// transform c_P = sum_b means[b] P(b,b) / 2^n.
MeasurementOperator measurement_tomography(const RealVector& basis_means);

/// Rows map vec(rho) or vec(process) to expectation values.
struct PredictorMatrix {
    Matrix rows;
    std::vector<std::string> labels;
};

/// One row per (rotation tuple x measurement operator), the measurement
/// index varying fastest: vec(U† M U)† with U the tensor product of the
/// per-qubit rotations. Rotation tuples run lexicographically with the
/// last qubit's index fastest.
PredictorMatrix build_state_predictor(const std::vector<MeasurementOperator>& meas_ops,
                                      const std::vector<Matrix>& rotations,
                                      int n_qubits);

/// Rows vec(rho_prep)^T ⊗ vec(M_rot)†, so row · vec(E) = Tr(M E(rho)).
/// Preparation tuples outermost; within each preparation the measurement
/// rows follow build_state_predictor order.
PredictorMatrix build_process_predictor(const std::vector<MeasurementOperator>& meas_ops,
                                        const std::vector<Matrix>& prep_rotations,
                                        const std::vector<Matrix>& meas_rotations,
                                        int n_qubits);

struct GlsResult {
    Vector solution;
    double residual_norm = 0.0;
    double condition = 0.0;
    Matrix pseudo_inverse;  // maps observations to the solution
};

/// Weighted least squares argmin sum_r |m_r - (P x)_r|^2 / C_r via SVD of
/// the whitened system. Throws on rank deficiency (reporting the deficient
/// subspace dimension) and on non-positive variances.
GlsResult gls_solve(const Matrix& p, const RealVector& variances,
                    const RealVector& m);

struct StateTomographyResult {
    Matrix rho;
    double residual_norm = 0.0;
    double condition = 0.0;
    Matrix covariance;  // of vec(rho), from the GLS pseudo-inverse
};

/// GLS state reconstruction. A trace constraint row (vec(I)†, value 1,
/// variance 1e-12) is appended; the estimate is Hermitized and
/// trace-normalized. Positivity is not enforced.
StateTomographyResult reconstruct_state(const PredictorMatrix& predictor,
                                        const RealVector& means,
                                        const RealVector& variances);

/// Standard errors of the Pauli coefficients Tr(P_a rho)/2^n propagated
/// through the covariance of vec(rho).
RealVector pauli_coefficient_errors(const StateTomographyResult& result);

struct ProcessTomographyResult {
    Matrix liouville;
    RealMatrix ptm;
    double residual_norm = 0.0;
    double condition = 0.0;
    double trace_preservation_dev = 0.0;  // ||vec(I)† E - vec(I)†||, diagnostic
};

ProcessTomographyResult reconstruct_process(const PredictorMatrix& predictor,
                                            const RealVector& means,
                                            const RealVector& variances);

/// Clip negative eigenvalues to zero and renormalize the trace. A
/// nearest-PSD heuristic, not the constrained optimum.
Matrix project_to_physical(const Matrix& rho);

}  // namespace corrtomo

#endif
