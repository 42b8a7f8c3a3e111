#include "corrtomo/tomography.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace corrtomo {

namespace {

int popcount_and(std::size_t a, std::size_t b) {
    return std::popcount(a & b);
}

// Tensor product over per-qubit rotation indices, last qubit fastest.
Matrix rotation_product(const std::vector<Matrix>& rotations, std::size_t tuple,
                        int n_qubits) {
    std::size_t k = rotations.size();
    Matrix u = Matrix::Identity(1, 1);
    std::size_t rem = tuple;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n_qubits), 0);
    for (int q = n_qubits - 1; q >= 0; --q) {
        idx[std::size_t(q)] = rem % k;
        rem /= k;
    }
    for (int q = 0; q < n_qubits; ++q) u = kron(u, rotations[idx[std::size_t(q)]]);
    return u;
}

std::string tuple_label(std::size_t tuple, std::size_t k, int n_qubits) {
    std::string s;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n_qubits), 0);
    std::size_t rem = tuple;
    for (int q = n_qubits - 1; q >= 0; --q) {
        idx[std::size_t(q)] = rem % k;
        rem /= k;
    }
    for (int q = 0; q < n_qubits; ++q) {
        if (q) s += ',';
        s += std::to_string(idx[std::size_t(q)]);
    }
    return s;
}

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

Matrix MeasurementOperator::to_operator() const {
    std::size_t dim = std::size_t{1} << n_qubits;
    if (z_coeffs.size() != Eigen::Index(dim))
        throw std::invalid_argument("MeasurementOperator: coefficient count mismatch");
    Matrix op = Matrix::Zero(Eigen::Index(dim), Eigen::Index(dim));
    for (std::size_t b = 0; b < dim; ++b) {
        double d = 0.0;
        for (std::size_t m = 0; m < dim; ++m)
            d += z_coeffs(Eigen::Index(m)) * ((popcount_and(m, b) & 1) ? -1.0 : 1.0);
        op(Eigen::Index(b), Eigen::Index(b)) = d;
    }
    return op;
}

std::vector<std::string> MeasurementOperator::labels(int n_qubits) {
    std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<std::string> out;
    out.reserve(dim);
    for (std::size_t m = 0; m < dim; ++m) {
        std::string s(std::size_t(n_qubits), 'I');
        for (int q = 0; q < n_qubits; ++q)
            if (m >> (n_qubits - 1 - q) & 1) s[std::size_t(q)] = 'Z';
        out.push_back(std::move(s));
    }
    return out;
}

MeasurementOperator measurement_tomography(const RealVector& basis_means) {
    auto dim = std::size_t(basis_means.size());
    if (!is_power_of_two(Eigen::Index(dim)))
        throw std::invalid_argument("measurement_tomography: length must be 2^n");
    int n = qubit_count(Eigen::Index(dim));
    MeasurementOperator op;
    op.n_qubits = n;
    op.z_coeffs = RealVector::Zero(Eigen::Index(dim));
    for (std::size_t m = 0; m < dim; ++m) {
        double c = 0.0;
        for (std::size_t b = 0; b < dim; ++b)
            c += basis_means(Eigen::Index(b)) * ((popcount_and(m, b) & 1) ? -1.0 : 1.0);
        op.z_coeffs(Eigen::Index(m)) = c / double(dim);
    }
    return op;
}

PredictorMatrix build_state_predictor(const std::vector<MeasurementOperator>& meas_ops,
                                      const std::vector<Matrix>& rotations,
                                      int n_qubits) {
    if (meas_ops.empty() || rotations.empty())
        throw std::invalid_argument("build_state_predictor: empty inputs");
    std::size_t tuples = ipow(rotations.size(), n_qubits);
    Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Eigen::Index d2 = dim * dim;

    PredictorMatrix p;
    p.rows.resize(Eigen::Index(tuples * meas_ops.size()), d2);
    Eigen::Index row = 0;
    for (std::size_t t = 0; t < tuples; ++t) {
        Matrix u = rotation_product(rotations, t, n_qubits);
        for (std::size_t m = 0; m < meas_ops.size(); ++m) {
            Matrix observable = u.adjoint() * meas_ops[m].to_operator() * u;
            p.rows.row(row++) = vec_op(observable).adjoint();
            p.labels.push_back("R(" + tuple_label(t, rotations.size(), n_qubits) +
                               ")|M" + std::to_string(m));
        }
    }
    return p;
}

PredictorMatrix build_process_predictor(const std::vector<MeasurementOperator>& meas_ops,
                                        const std::vector<Matrix>& prep_rotations,
                                        const std::vector<Matrix>& meas_rotations,
                                        int n_qubits) {
    PredictorMatrix state_pred =
        build_state_predictor(meas_ops, meas_rotations, n_qubits);
    std::size_t preps = ipow(prep_rotations.size(), n_qubits);
    Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Eigen::Index d2 = dim * dim;

    PredictorMatrix p;
    p.rows.resize(Eigen::Index(preps) * state_pred.rows.rows(), d2 * d2);
    Eigen::Index row = 0;
    for (std::size_t a = 0; a < preps; ++a) {
        // rho = (U_i|0><0|U_i†) ⊗ ... = U |0..0><0..0| U†
        Matrix u = rotation_product(prep_rotations, a, n_qubits);
        Matrix ground = Matrix::Zero(dim, dim);
        ground(0, 0) = 1.0;
        Matrix rho = u * ground * u.adjoint();
        Vector vrho = vec_op(rho);
        std::string prep_lbl = tuple_label(a, prep_rotations.size(), n_qubits);
        for (Eigen::Index r = 0; r < state_pred.rows.rows(); ++r) {
            // row(qA*d2 + qB) = vrho(qA) * conj(vecM)(qB) so that
            // row · vec(E) = vec(M)† E vec(rho) = Tr(M E(rho))
            for (Eigen::Index qa = 0; qa < d2; ++qa)
                p.rows.row(row).segment(qa * d2, d2) =
                    vrho(qa) * state_pred.rows.row(r);
            p.labels.push_back("P(" + prep_lbl + ")|" + state_pred.labels[std::size_t(r)]);
            ++row;
        }
    }
    return p;
}

GlsResult gls_solve(const Matrix& p, const RealVector& variances,
                    const RealVector& m) {
    if (p.rows() != variances.size() || p.rows() != m.size())
        throw std::invalid_argument("gls_solve: row count mismatch");
    if ((variances.array() <= 0.0).any())
        throw std::invalid_argument("gls_solve: variances must be strictly positive");

    RealVector w = variances.array().rsqrt();
    Matrix pw = w.asDiagonal() * p;
    Vector y = (w.array() * m.array()).matrix().cast<Complex>();

    Eigen::BDCSVD<Matrix> svd(pw, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double tol = sv(0) * 1e-10;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    if (rank < p.cols())
        throw std::runtime_error("gls_solve: rank-deficient predictor, deficiency " +
                                 std::to_string(p.cols() - rank));

    GlsResult res;
    res.solution = svd.solve(y);
    res.condition = sv(0) / sv(sv.size() - 1);
    res.residual_norm = (pw * res.solution - y).norm();
    Matrix sinv_ut = sv.cwiseInverse().cast<Complex>().asDiagonal() *
                     svd.matrixU().adjoint();
    res.pseudo_inverse = svd.matrixV() * sinv_ut * Matrix(w.cast<Complex>().asDiagonal());
    return res;
}

namespace {

// Appends the exact trace-constraint row vec(I)† with tiny variance.
void append_trace_row(const PredictorMatrix& predictor, const RealVector& means,
                      const RealVector& variances, Matrix& p_out,
                      RealVector& m_out, RealVector& c_out) {
    Eigen::Index rows = predictor.rows.rows();
    Eigen::Index d2 = predictor.rows.cols();
    auto dim = Eigen::Index(std::llround(std::sqrt(double(d2))));
    p_out.resize(rows + 1, d2);
    p_out.topRows(rows) = predictor.rows;
    p_out.row(rows) = vec_op(Matrix::Identity(dim, dim)).adjoint();
    m_out.resize(rows + 1);
    m_out.head(rows) = means;
    m_out(rows) = 1.0;
    c_out.resize(rows + 1);
    c_out.head(rows) = variances;
    c_out(rows) = 1e-12;
}

}  // namespace

StateTomographyResult reconstruct_state(const PredictorMatrix& predictor,
                                        const RealVector& means,
                                        const RealVector& variances) {
    Matrix p;
    RealVector m, c;
    append_trace_row(predictor, means, variances, p, m, c);
    GlsResult gls = gls_solve(p, c, m);

    StateTomographyResult res;
    Matrix rho = unvec_op(gls.solution);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace();
    res.rho = rho;
    res.residual_norm = gls.residual_norm;
    res.condition = gls.condition;
    res.covariance = gls.pseudo_inverse * c.cast<Complex>().asDiagonal() *
                     gls.pseudo_inverse.adjoint();
    return res;
}

RealVector pauli_coefficient_errors(const StateTomographyResult& result) {
    int n = qubit_count(result.rho.rows());
    auto basis = pauli_basis(n);
    double dim = double(result.rho.rows());
    RealVector errs(basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a) {
        Vector w = vec_op(basis[a]) / dim;
        double var = (w.adjoint() * result.covariance * w).value().real();
        errs(Eigen::Index(a)) = std::sqrt(std::max(0.0, var));
    }
    return errs;
}

ProcessTomographyResult reconstruct_process(const PredictorMatrix& predictor,
                                            const RealVector& means,
                                            const RealVector& variances) {
    // Traceless measurement operators leave Tr(E(.)) unconstrained by the data;
    // append trace-preservation rows Tr(E(P_k)) = Tr(P_k) with tiny variance.
    Eigen::Index d4 = predictor.rows.cols();
    auto d2 = Eigen::Index(std::llround(std::sqrt(double(d4))));
    auto dim = Eigen::Index(std::llround(std::sqrt(double(d2))));
    auto basis = pauli_basis(qubit_count(dim));
    Eigen::Index nrows = predictor.rows.rows();
    Matrix p(nrows + d2, d4);
    p.topRows(nrows) = predictor.rows;
    RealVector m(nrows + d2), c(nrows + d2);
    m.head(nrows) = means;
    c.head(nrows) = variances;
    Vector vi = vec_op(Matrix::Identity(dim, dim));
    for (Eigen::Index k = 0; k < d2; ++k) {
        Vector vb = vec_op(basis[std::size_t(k)]);
        for (Eigen::Index qa = 0; qa < d2; ++qa)
            p.row(nrows + k).segment(qa * d2, d2) = vb(qa) * vi.adjoint();
        m(nrows + k) = basis[std::size_t(k)].trace().real();
        c(nrows + k) = 1e-12;
    }
    GlsResult gls = gls_solve(p, c, m);

    ProcessTomographyResult res;
    res.liouville = unvec_op(gls.solution);
    res.ptm = ptm_from_liouville(res.liouville);
    res.residual_norm = gls.residual_norm;
    res.condition = gls.condition;
    res.trace_preservation_dev = (vi.adjoint() * res.liouville - vi.adjoint()).norm();
    return res;
}

Matrix project_to_physical(const Matrix& rho) {
    Matrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    RealVector evals = es.eigenvalues().cwiseMax(0.0);
    double total = evals.sum();
    if (total <= 0.0)
        throw std::invalid_argument("project_to_physical: no positive eigenvalues");
    evals /= total;
    return es.eigenvectors() * evals.cast<Complex>().asDiagonal() *
           es.eigenvectors().adjoint();
}

}  // namespace corrtomo
