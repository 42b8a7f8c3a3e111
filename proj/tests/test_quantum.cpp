#include <doctest.h>

#include <cmath>
#include <random>

#include "corrtomo/quantum.hpp"

using namespace corrtomo;

namespace {

Matrix random_unitary(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

Matrix random_density(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
    Matrix rho = a * a.adjoint();
    return rho / rho.trace();
}

}  // namespace

TEST_CASE("pauli_basis ordering and orthogonality") {
    auto b1 = pauli_basis(1);
    REQUIRE(b1.size() == 4);
    CHECK((b1[0] - pauli_i()).norm() == doctest::Approx(0.0));
    CHECK((b1[1] - pauli_x()).norm() == doctest::Approx(0.0));
    CHECK((b1[2] - pauli_y()).norm() == doctest::Approx(0.0));
    CHECK((b1[3] - pauli_z()).norm() == doctest::Approx(0.0));

    auto b2 = pauli_basis(2);
    REQUIRE(b2.size() == 16);
    CHECK((b2[3] - kron(pauli_i(), pauli_z())).norm() == doctest::Approx(0.0));
    CHECK((b2[15] - kron(pauli_z(), pauli_z())).norm() == doctest::Approx(0.0));
    auto labels = pauli_labels(2);
    CHECK(labels[3] == "IZ");
    CHECK(labels[12] == "ZI");
    CHECK(labels[15] == "ZZ");

    for (std::size_t a = 0; a < 16; ++a)
        for (std::size_t c = 0; c < 16; ++c) {
            Complex tr = (b2[a] * b2[c]).trace();
            CHECK(std::abs(tr - (a == c ? 4.0 : 0.0)) < 1e-12);
        }

    CHECK_THROWS(pauli_basis(0));
    CHECK_THROWS(pauli_basis(5));
}

TEST_CASE("pauli_decompose") {
    Matrix zi = Matrix::Zero(4, 4);
    zi.diagonal() << 1, 1, -1, -1;
    Vector c = pauli_decompose(zi);
    for (int a = 0; a < 16; ++a)
        CHECK(std::abs(c(a) - (a == 12 ? 1.0 : 0.0)) < 1e-12);

    // cross-coupled measurement operator round-trips exactly
    auto b2 = pauli_basis(2);
    Matrix m1 = 1.0110 * b2[12] + 0.0164 * b2[3] - 0.0106 * b2[15];
    Vector cm = pauli_decompose(m1);
    CHECK(cm(12).real() == doctest::Approx(1.0110).epsilon(1e-12));
    CHECK(cm(3).real() == doctest::Approx(0.0164).epsilon(1e-12));
    CHECK(cm(15).real() == doctest::Approx(-0.0106).epsilon(1e-12));
    CHECK((pauli_reconstruct(cm, 2) - m1).norm() < 1e-12);

    Vector bell(4);
    bell << 1, 0, 0, 1;
    bell /= std::sqrt(2.0);
    Vector cb = pauli_decompose(bell * bell.adjoint());
    auto labels = pauli_labels(2);
    for (int a = 0; a < 16; ++a) {
        double expect = 0.0;
        if (labels[a] == "II" || labels[a] == "XX" || labels[a] == "ZZ") expect = 0.25;
        if (labels[a] == "YY") expect = -0.25;
        CHECK(std::abs(cb(a) - expect) < 1e-12);
    }
}

TEST_CASE("vec/unvec column-major convention") {
    Matrix a(2, 2);
    a << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0);
    Vector v = vec_op(a);
    CHECK(v(0) == Complex(1, 0));
    CHECK(v(1) == Complex(3, 0));
    CHECK(v(2) == Complex(2, 0));
    CHECK(v(3) == Complex(4, 0));

    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    auto rnd = [&](int d) {
        Matrix m(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
        return m;
    };
    Matrix A = rnd(2), X = rnd(2), B = rnd(2);
    CHECK((vec_op(A * X * B) - kron(B.transpose(), A) * vec_op(X)).norm() < 1e-12);

    Matrix r = rnd(4);
    CHECK((unvec_op(vec_op(r)) - r).norm() == doctest::Approx(0.0));
    Vector bad(5);
    bad.setZero();
    CHECK_THROWS(unvec_op(bad));
}

TEST_CASE("liouville_of_unitary") {
    CHECK((liouville_of_unitary(Matrix::Identity(2, 2)) - Matrix::Identity(4, 4))
              .norm() < 1e-12);

    RealMatrix ptm_x = ptm_from_liouville(liouville_of_unitary(pauli_x()));
    RealVector diag_expect(4);
    diag_expect << 1, 1, -1, -1;
    CHECK((ptm_x - RealMatrix(diag_expect.asDiagonal())).norm() < 1e-12);

    std::mt19937_64 rng(5);
    Matrix u = random_unitary(4, rng);
    Matrix e = liouville_of_unitary(u);
    CHECK((e * e.adjoint() - Matrix::Identity(16, 16)).norm() < 1e-10);

    for (int k = 0; k < 100; ++k) {
        Matrix uu = random_unitary(4, rng);
        Matrix rho = random_density(4, rng);
        CHECK((apply_process(liouville_of_unitary(uu), rho) - uu * rho * uu.adjoint())
                  .norm() < 1e-12);
    }

    Matrix not_unitary = 2.0 * Matrix::Identity(2, 2);
    CHECK_THROWS(liouville_of_unitary(not_unitary));
}

TEST_CASE("ptm_from_liouville") {
    CHECK((ptm_from_liouville(Matrix::Identity(16, 16)) - RealMatrix::Identity(16, 16))
              .norm() < 1e-12);

    RealMatrix r = ptm_from_liouville(liouville_of_unitary(zx_gate(-M_PI / 2)));
    CHECK(r(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            double v = std::abs(r(i, j));
            CHECK((v < 1e-10 || std::abs(v - 1.0) < 1e-10));
        }
    CHECK((r.transpose() * r - RealMatrix::Identity(16, 16)).norm() < 1e-10);

    // Z rotation acts as a plane rotation in the (X, Y) sector
    double theta = 0.7;
    RealMatrix rz = ptm_from_liouville(liouville_of_unitary(rz_gate(theta)));
    CHECK(rz(1, 1) == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    CHECK(rz(2, 2) == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    CHECK(std::abs(rz(1, 2)) == doctest::Approx(std::sin(theta)).epsilon(1e-12));
    CHECK(rz(1, 2) == doctest::Approx(-rz(2, 1)).epsilon(1e-12));
    CHECK(rz(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rz(3, 3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("state_fidelity") {
    Vector psi(4);
    psi << 0.5, 0.5, 0.5, 0.5;
    CHECK(state_fidelity(psi, psi * psi.adjoint()) == doctest::Approx(1.0));
    CHECK(state_fidelity(psi, Matrix::Identity(4, 4) / 4.0) == doctest::Approx(0.25));

    Vector bell(4);
    bell << 1, 0, 0, 1;
    bell /= std::sqrt(2.0);
    Matrix mix = Matrix::Zero(4, 4);
    mix(0, 0) = 0.5;
    mix(3, 3) = 0.5;
    CHECK(state_fidelity(bell, mix) == doctest::Approx(0.5));

    Vector phased = std::exp(Complex(0, 1.234)) * bell;
    CHECK(state_fidelity(phased, mix) == doctest::Approx(state_fidelity(bell, mix)));
}

TEST_CASE("gate_fidelities") {
    RealMatrix ideal = ptm_from_liouville(liouville_of_unitary(zx_gate(-M_PI / 2)));
    auto [fp, fa] = gate_fidelities(ideal, ideal);
    CHECK(fp == doctest::Approx(1.0));
    CHECK(fa == doctest::Approx(1.0));

    RealMatrix id1 = RealMatrix::Identity(4, 4);
    RealVector dx(4);
    dx << 1, 1, -1, -1;
    auto [fpx, fax] = gate_fidelities(id1, RealMatrix(dx.asDiagonal()));
    CHECK(fpx == doctest::Approx(0.0));
    CHECK(fax == doctest::Approx(1.0 / 3.0));

    RealMatrix depol = RealMatrix::Zero(16, 16);
    depol(0, 0) = 1.0;
    auto [fpd, fad] = gate_fidelities(RealMatrix::Identity(16, 16), depol);
    CHECK(fpd == doctest::Approx(1.0 / 16.0));
    CHECK(fad == doctest::Approx(0.25));
}

TEST_CASE("zx_gate") {
    CHECK((zx_gate(0.0) - Matrix::Identity(4, 4)).norm() < 1e-12);

    Matrix id = Matrix::Identity(2, 2);
    Matrix rho_in = kron(0.5 * (id - pauli_y()), 0.5 * (id + pauli_z()));
    CHECK(std::abs(rho_in.trace() - 1.0) < 1e-12);
    Matrix u = zx_gate(-M_PI / 2);
    Matrix rho_out = u * rho_in * u.adjoint();
    Vector c = pauli_decompose(rho_out);
    auto labels = pauli_labels(2);
    for (int a = 0; a < 16; ++a) {
        int weight = int(labels[std::size_t(a)][0] != 'I') +
                     int(labels[std::size_t(a)][1] != 'I');
        if (weight == 1) CHECK(std::abs(c(a)) < 1e-12);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_out);
    Vector psi = es.eigenvectors().col(3);
    CHECK(std::abs(state_fidelity(psi, rho_out)) == doctest::Approx(1.0));

    Matrix u4 = u * u * u * u;
    // fourth power is the identity up to global phase
    Complex phase = u4(0, 0);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
    CHECK((u4 - phase * Matrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("tomography_rotations conjugation conventions") {
    auto rots = tomography_rotations();
    REQUIRE(rots.size() == 4);
    CHECK((rots[0] - Matrix::Identity(2, 2)).norm() < 1e-12);

    Matrix z = pauli_z();
    CHECK((rots[3].adjoint() * z * rots[3] + z).norm() < 1e-12);           // Rx(pi): Z -> -Z
    CHECK((rots[2].adjoint() * z * rots[2] + pauli_x()).norm() < 1e-12);   // Ry(pi/2): Z -> -X
    CHECK((rots[1].adjoint() * z * rots[1] - pauli_y()).norm() < 1e-12);   // Rx(pi/2): Z -> +Y
}

TEST_CASE("validation helpers") {
    CHECK_NOTHROW(check_density_matrix(Matrix::Identity(4, 4) / 4.0));
    Matrix bad = Matrix::Identity(4, 4);
    CHECK_THROWS(check_density_matrix(bad));  // trace 4
    Vector v(2);
    v << 1, 1;
    CHECK_THROWS(check_unit_vector(v));
    CHECK(is_power_of_two(8));
    CHECK_FALSE(is_power_of_two(6));
    CHECK(qubit_count(16) == 4);
}
