#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "corrtomo/estimation.hpp"
#include "corrtomo/experiments.hpp"
#include "corrtomo/quantum.hpp"
#include "corrtomo/scenario.hpp"

namespace py = pybind11;
using namespace corrtomo;

PYBIND11_MODULE(_corrtomo, m) {
    m.doc() = "multiplexed-readout simulation and correlation tomography";

    m.def("crossover_snr", [] { return crossover_snr(); },
          "(SNR, fidelity) where soft and threshold estimator variances cross");
    m.def("gaussian_fidelity", &gaussian_fidelity, py::arg("nu"));
    m.def("predicted_soft_variance", &predicted_soft_variance, py::arg("mean_sz"),
          py::arg("nu2"), py::arg("shots"));
    m.def("predicted_threshold_variance", &predicted_threshold_variance,
          py::arg("mean_sz"), py::arg("nu"), py::arg("shots"));
    m.def("goodman_variance",
          [](const std::vector<double>& nu2s, const std::vector<double>& means) {
              return goodman_variance(nu2s, means);
          },
          py::arg("nu2s"), py::arg("means"));
    m.def("goodman_approx", &goodman_approx, py::arg("n"), py::arg("snr"));

    m.def("soft_average",
          [](const std::vector<double>& values) {
              EstimateResult r = soft_average(values);
              return py::make_tuple(r.mean, r.variance, r.shots_used);
          },
          py::arg("values"), "(mean, variance_of_mean, shots)");

    m.def("pauli_basis", &pauli_basis, py::arg("n_qubits"));
    m.def("pauli_labels", &pauli_labels, py::arg("n_qubits"));
    m.def("pauli_decompose", &pauli_decompose, py::arg("op"));
    m.def("zx_gate", &zx_gate, py::arg("angle"));
    m.def("liouville_of_unitary", &liouville_of_unitary, py::arg("u"));
    m.def("ptm_from_liouville", &ptm_from_liouville, py::arg("liouville"));
    m.def("state_fidelity", &state_fidelity, py::arg("psi"), py::arg("rho"));
    m.def("named_input_state", &named_input_state, py::arg("name"));

    m.def("run_scenario",
          [](const std::string& config_json, const std::string& out_dir,
             unsigned threads) {
              auto cfg = nlohmann::json::parse(config_json);
              RunReport report = run_scenario(cfg, out_dir, threads);
              return report_to_json(report).dump();
          },
          py::arg("config_json"), py::arg("out_dir"), py::arg("threads") = 1,
          "Run one scenario from a JSON config string; returns the report as JSON.");
}
