#include "corrtomo/experiments.hpp"

#include <stdexcept>

#include "corrtomo/estimation.hpp"
#include "corrtomo/rng.hpp"

namespace corrtomo {

namespace {

// Row data (M1, M2, M12 per configuration) in build_state_predictor order.
struct RowData {
    RealVector means;
    RealVector variances;
};

RowData measured_rows_for_state(const TwoQubitReadoutSim& sim, const Matrix& rho,
                                const std::vector<Matrix>& rotations,
                                std::size_t shots, std::uint64_t seed) {
    std::size_t tuples = rotations.size() * rotations.size();
    RowData rows{RealVector(Eigen::Index(tuples * 3)), RealVector(Eigen::Index(tuples * 3))};
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < rotations.size(); ++i) {
        for (std::size_t j = 0; j < rotations.size(); ++j) {
            // applying the pulses U then measuring M equals measuring
            // U† M U on rho; shots are drawn from diag(U rho U†)
            Matrix u = kron(rotations[i], rotations[j]);
            Matrix rotated = u * rho * u.adjoint();
            std::size_t t = i * rotations.size() + j;
            auto outcomes = sim.sample_outcomes(rotated, shots, derive_seed(seed, 2 * t));
            auto values = sim.measure(outcomes, derive_seed(seed, 2 * t + 1));
            EstimateResult e0 = soft_average(values.channel[0]);
            EstimateResult e1 = soft_average(values.channel[1]);
            EstimateResult ep = soft_average(values.product);
            rows.means(r) = e0.mean;
            rows.variances(r++) = e0.variance;
            rows.means(r) = e1.mean;
            rows.variances(r++) = e1.variance;
            rows.means(r) = ep.mean;
            rows.variances(r++) = ep.variance;
        }
    }
    return rows;
}

}  // namespace

Vector dominant_eigenvector(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
    return es.eigenvectors().col(rho.rows() - 1);
}

Matrix named_input_state(const std::string& name) {
    Matrix id = Matrix::Identity(2, 2);
    if (name == "00") {
        Matrix rho = Matrix::Zero(4, 4);
        rho(0, 0) = 1.0;
        return rho;
    }
    if (name == "y-z+") return kron(0.5 * (id - pauli_y()), 0.5 * (id + pauli_z()));
    if (name == "x-y+") return kron(0.5 * (id - pauli_x()), 0.5 * (id + pauli_y()));
    throw std::invalid_argument("unknown input state: " + name);
}

StateTomoExperiment run_state_tomo_experiment(const ReadoutSimConfig& cfg,
                                              std::array<double, 2> target_nu2,
                                              std::size_t cal_shots,
                                              std::size_t shots_per_config,
                                              const Matrix& rho_true,
                                              std::uint64_t seed) {
    TwoQubitReadoutSim sim(cfg);
    std::size_t pilot = std::max<std::size_t>(500, cal_shots / 10);
    tune_noise_to_variance(sim, target_nu2, pilot, derive_seed(seed, 1));
    sim.calibrate(cal_shots, derive_seed(seed, 2));

    auto rotations = tomography_rotations();
    RowData rows = measured_rows_for_state(sim, rho_true, rotations,
                                           shots_per_config, derive_seed(seed, 3));
    PredictorMatrix predictor =
        build_state_predictor(sim.measurement_operators(), rotations, 2);

    StateTomoExperiment out;
    out.tomo = reconstruct_state(predictor, rows.means, rows.variances);
    Vector coeffs = pauli_decompose(out.tomo.rho);
    out.pauli_coeffs = coeffs.real();
    out.pauli_errors = pauli_coefficient_errors(out.tomo);
    out.fidelity = state_fidelity(dominant_eigenvector(rho_true), out.tomo.rho);
    out.nu2_00 = {sim.basis_variances(0)(0), sim.basis_variances(1)(0)};
    out.meas_ops = sim.measurement_operators();
    return out;
}

ProcessTomoExperiment run_process_tomo_experiment(const ShotValueModel& model,
                                                  const Matrix& gate,
                                                  std::size_t shots_per_config,
                                                  std::uint64_t seed) {
    std::vector<MeasurementOperator> meas_ops;
    meas_ops.push_back(measurement_tomography(model.basis_means[0]));
    meas_ops.push_back(measurement_tomography(model.basis_means[1]));
    RealVector prod_means(4);
    for (int b = 0; b < 4; ++b)
        prod_means(b) = model.basis_means[0](b) * model.basis_means[1](b);
    meas_ops.push_back(measurement_tomography(prod_means));

    auto rotations = tomography_rotations();
    std::size_t k = rotations.size();
    std::size_t tuples = k * k;
    RealVector means(Eigen::Index(tuples * tuples * 3));
    RealVector variances(Eigen::Index(tuples * tuples * 3));

    Matrix ground = Matrix::Zero(4, 4);
    ground(0, 0) = 1.0;
    Eigen::Index r = 0;
    std::uint64_t cfg_idx = 0;
    for (std::size_t pi = 0; pi < k; ++pi) {
        for (std::size_t pj = 0; pj < k; ++pj) {
            Matrix up = kron(rotations[pi], rotations[pj]);
            Matrix rho_in = up * ground * up.adjoint();
            Matrix rho_out = gate * rho_in * gate.adjoint();
            for (std::size_t mi = 0; mi < k; ++mi) {
                for (std::size_t mj = 0; mj < k; ++mj) {
                    Matrix um = kron(rotations[mi], rotations[mj]);
                    Matrix rotated = um * rho_out * um.adjoint();
                    auto values = model.sample(rotated, shots_per_config,
                                               derive_seed(seed, cfg_idx++));
                    EstimateResult e0 = soft_average(values.channel[0]);
                    EstimateResult e1 = soft_average(values.channel[1]);
                    EstimateResult ep = soft_average(values.product);
                    means(r) = e0.mean;
                    variances(r++) = e0.variance;
                    means(r) = e1.mean;
                    variances(r++) = e1.variance;
                    means(r) = ep.mean;
                    variances(r++) = ep.variance;
                }
            }
        }
    }

    PredictorMatrix predictor =
        build_process_predictor(meas_ops, rotations, rotations, 2);
    ProcessTomoExperiment out;
    out.tomo = reconstruct_process(predictor, means, variances);
    RealMatrix ideal = ptm_from_liouville(liouville_of_unitary(gate));
    auto [fpro, favg] = gate_fidelities(ideal, out.tomo.ptm);
    out.process_fidelity = fpro;
    out.avg_gate_fidelity = favg;
    return out;
}

ProcessTomoExperiment run_process_tomo_noiseless(const Matrix& gate) {
    RealVector m0(4), m1(4), mp(4);
    m0 << 1, 1, -1, -1;
    m1 << 1, -1, 1, -1;
    mp = m0.cwiseProduct(m1);
    std::vector<MeasurementOperator> meas_ops = {measurement_tomography(m0),
                                                 measurement_tomography(m1),
                                                 measurement_tomography(mp)};

    auto rotations = tomography_rotations();
    std::size_t k = rotations.size();
    Matrix ground = Matrix::Zero(4, 4);
    ground(0, 0) = 1.0;
    RealVector means(Eigen::Index(k * k * k * k * 3));
    Eigen::Index r = 0;
    for (std::size_t pi = 0; pi < k; ++pi) {
        for (std::size_t pj = 0; pj < k; ++pj) {
            Matrix up = kron(rotations[pi], rotations[pj]);
            Matrix rho_out = gate * (up * ground * up.adjoint()).eval() * gate.adjoint();
            for (std::size_t mi = 0; mi < k; ++mi) {
                for (std::size_t mj = 0; mj < k; ++mj) {
                    Matrix um = kron(rotations[mi], rotations[mj]);
                    for (const auto& mop : meas_ops) {
                        Matrix obs = um.adjoint() * mop.to_operator() * um;
                        means(r++) = (obs * rho_out).trace().real();
                    }
                }
            }
        }
    }

    PredictorMatrix predictor =
        build_process_predictor(meas_ops, rotations, rotations, 2);
    RealVector variances = RealVector::Ones(means.size());
    ProcessTomoExperiment out;
    out.tomo = reconstruct_process(predictor, means, variances);
    RealMatrix ideal = ptm_from_liouville(liouville_of_unitary(gate));
    auto [fpro, favg] = gate_fidelities(ideal, out.tomo.ptm);
    out.process_fidelity = fpro;
    out.avg_gate_fidelity = favg;
    return out;
}

}  // namespace corrtomo
