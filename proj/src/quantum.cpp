#include "corrtomo/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace corrtomo {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix pauli_i() { return Matrix::Identity(2, 2); }

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

int qubit_count(Eigen::Index dim) {
    if (!is_power_of_two(dim))
        throw std::invalid_argument("dimension is not a power of 2");
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    return n;
}

std::vector<Matrix> pauli_basis(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 4)
        throw std::invalid_argument("pauli_basis: n_qubits must be in [1,4]");
    const Matrix singles[4] = {pauli_i(), pauli_x(), pauli_y(), pauli_z()};
    std::size_t count = std::size_t{1} << (2 * n_qubits);
    std::vector<Matrix> basis;
    basis.reserve(count);
    for (std::size_t a = 0; a < count; ++a) {
        Matrix p = Matrix::Identity(1, 1);
        for (int q = 0; q < n_qubits; ++q) {
            int digit = int(a >> (2 * (n_qubits - 1 - q))) & 3;
            p = kron(p, singles[digit]);
        }
        basis.push_back(std::move(p));
    }
    return basis;
}

std::vector<std::string> pauli_labels(int n_qubits) {
    static const char names[] = "IXYZ";
    std::size_t count = std::size_t{1} << (2 * n_qubits);
    std::vector<std::string> labels;
    labels.reserve(count);
    for (std::size_t a = 0; a < count; ++a) {
        std::string s(n_qubits, 'I');
        for (int q = 0; q < n_qubits; ++q)
            s[q] = names[(a >> (2 * (n_qubits - 1 - q))) & 3];
        labels.push_back(std::move(s));
    }
    return labels;
}

Vector pauli_decompose(const Matrix& op) {
    if (op.rows() != op.cols())
        throw std::invalid_argument("pauli_decompose: operator must be square");
    int n = qubit_count(op.rows());
    auto basis = pauli_basis(n);
    Vector coeffs(basis.size());
    double dim = double(op.rows());
    for (std::size_t a = 0; a < basis.size(); ++a)
        coeffs(Eigen::Index(a)) = (basis[a] * op).trace() / dim;
    return coeffs;
}

Matrix pauli_reconstruct(const Vector& coeffs, int n_qubits) {
    auto basis = pauli_basis(n_qubits);
    if (coeffs.size() != Eigen::Index(basis.size()))
        throw std::invalid_argument("pauli_reconstruct: coefficient count mismatch");
    Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Matrix op = Matrix::Zero(dim, dim);
    for (std::size_t a = 0; a < basis.size(); ++a)
        op += coeffs(Eigen::Index(a)) * basis[a];
    return op;
}

Vector vec_op(const Matrix& a) {
    return Eigen::Map<const Vector>(a.data(), a.size());
}

Matrix unvec_op(const Vector& v) {
    auto dim = Eigen::Index(std::llround(std::sqrt(double(v.size()))));
    if (dim * dim != v.size())
        throw std::invalid_argument("unvec_op: length is not a perfect square");
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix liouville_of_unitary(const Matrix& u) {
    if (u.rows() != u.cols())
        throw std::invalid_argument("liouville_of_unitary: non-square input");
    Matrix uu = u.adjoint() * u;
    if ((uu - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("liouville_of_unitary: input is not unitary");
    return kron(u.conjugate(), u);
}

Matrix apply_process(const Matrix& liouville, const Matrix& rho) {
    return unvec_op(liouville * vec_op(rho));
}

RealMatrix ptm_from_liouville(const Matrix& liouville) {
    int n = qubit_count(Eigen::Index(std::llround(std::sqrt(double(liouville.rows())))));
    auto basis = pauli_basis(n);
    double dim = double(Eigen::Index{1} << n);
    RealMatrix r(basis.size(), basis.size());
    for (std::size_t b = 0; b < basis.size(); ++b) {
        Matrix mapped = apply_process(liouville, basis[b]);
        for (std::size_t a = 0; a < basis.size(); ++a)
            r(Eigen::Index(a), Eigen::Index(b)) = ((basis[a] * mapped).trace() / dim).real();
    }
    return r;
}

double state_fidelity(const Vector& psi, const Matrix& rho) {
    if (psi.size() != rho.rows() || rho.rows() != rho.cols())
        throw std::invalid_argument("state_fidelity: dimension mismatch");
    return (psi.adjoint() * rho * psi).value().real();
}

std::pair<double, double> gate_fidelities(const RealMatrix& r_ideal,
                                          const RealMatrix& r_meas) {
    if (r_ideal.rows() != r_meas.rows() || r_ideal.cols() != r_meas.cols())
        throw std::invalid_argument("gate_fidelities: dimension mismatch");
    double d2 = double(r_ideal.rows());  // 4^n
    double dim = std::sqrt(d2);          // 2^n
    double f_pro = (r_ideal.transpose() * r_meas).trace() / d2;
    double f_avg = (dim * f_pro + 1.0) / (dim + 1.0);
    return {f_pro, f_avg};
}

namespace {
Matrix axis_rotation(const Matrix& sigma, double theta) {
    return std::cos(theta / 2) * Matrix::Identity(2, 2) -
           Complex(0, 1) * std::sin(theta / 2) * sigma;
}
}  // namespace

Matrix rx_gate(double theta) { return axis_rotation(pauli_x(), theta); }
Matrix ry_gate(double theta) { return axis_rotation(pauli_y(), theta); }
Matrix rz_gate(double theta) { return axis_rotation(pauli_z(), theta); }

Matrix zx_gate(double angle) {
    // (Z⊗X)^2 = I, so the exponential has the same two-term form.
    Matrix zx = kron(pauli_z(), pauli_x());
    return std::cos(angle / 2) * Matrix::Identity(4, 4) -
           Complex(0, 1) * std::sin(angle / 2) * zx;
}

std::vector<Matrix> tomography_rotations() {
    const double pi = std::acos(-1.0);
    return {Matrix::Identity(2, 2), rx_gate(pi / 2), ry_gate(pi / 2), rx_gate(pi)};
}

void check_density_matrix(const Matrix& rho, double tol) {
    if (rho.rows() != rho.cols())
        throw std::invalid_argument("density matrix must be square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho.trace() - Complex(1, 0)) > tol)
        throw std::invalid_argument("density matrix trace is not 1");
}

void check_unit_vector(const Vector& psi, double tol) {
    if (std::abs(psi.norm() - 1.0) > tol)
        throw std::invalid_argument("state vector is not normalized");
}

}  // namespace corrtomo
