#ifndef CORRTOMO_QUANTUM_HPP
#define CORRTOMO_QUANTUM_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace corrtomo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

Matrix kron(const Matrix& a, const Matrix& b);

/// Single-qubit Paulis.
Matrix pauli_i();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// All 4^n n-qubit Pauli strings, lexicographic in {I,X,Y,Z} with the
/// first qubit as the most significant digit (II, IX, IY, IZ, XI, ...).
/// n must be in [1,4].
std::vector<Matrix> pauli_basis(int n_qubits);
std::vector<std::string> pauli_labels(int n_qubits);

/// Coefficients c_a = Tr(P_a op) / 2^n in pauli_basis order.
Vector pauli_decompose(const Matrix& op);
Matrix pauli_reconstruct(const Vector& coeffs, int n_qubits);

/// Column-major vectorization and its inverse.
Vector vec_op(const Matrix& a);
Matrix unvec_op(const Vector& v);

/// Liouville-representation superoperator of rho -> U rho U†.
/// Under column-major vec this is conj(U) ⊗ U. Throws if U is not
/// unitary to 1e-10.
Matrix liouville_of_unitary(const Matrix& u);

/// unvec(E vec(rho))
Matrix apply_process(const Matrix& liouville, const Matrix& rho);

/// R_ab = Tr(P_a E(P_b)) / 2^n, Paulis in pauli_basis order.
RealMatrix ptm_from_liouville(const Matrix& liouville);

/// F = <psi| rho |psi>
double state_fidelity(const Vector& psi, const Matrix& rho);

/// (process fidelity, average gate fidelity) from two PTMs:
/// F_pro = Tr(R_ideal^T R_meas)/4^n, F_avg = (2^n F_pro + 1)/(2^n + 1).
std::pair<double, double> gate_fidelities(const RealMatrix& r_ideal,
                                          const RealMatrix& r_meas);

/// Rotation convention R_a(theta) = exp(-i theta sigma_a / 2).
Matrix rx_gate(double theta);
Matrix ry_gate(double theta);
Matrix rz_gate(double theta);

/// exp(-i angle/2 Z⊗X); angle = -pi/2 gives the echoed cross-resonance gate.
Matrix zx_gate(double angle);

/// Per-qubit rotation set {I, Rx(pi/2), Ry(pi/2), Rx(pi)}.
/// Informationally complete for diagonal native observables; note
/// Ry(pi/2)† Z Ry(pi/2) = -X and Rx(pi/2)† Z Rx(pi/2) = +Y under the
/// sign convention above.
std::vector<Matrix> tomography_rotations();

/// Validation helpers; throw std::invalid_argument on violation.
void check_density_matrix(const Matrix& rho, double tol = 1e-12);
void check_unit_vector(const Vector& psi, double tol = 1e-12);

bool is_power_of_two(Eigen::Index n);
int qubit_count(Eigen::Index dim);

}  // namespace corrtomo

#endif
