#ifndef CORRTOMO_SERIALIZE_HPP
#define CORRTOMO_SERIALIZE_HPP

#include <filesystem>

#include <json.hpp>

#include "corrtomo/channelizer.hpp"
#include "corrtomo/matched_filter.hpp"
#include "corrtomo/quantum.hpp"

namespace corrtomo {

/// Operators serialize as nested arrays of [re, im] pairs.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json kernel_to_json(const Kernel& k);
Kernel kernel_from_json(const nlohmann::json& j);

nlohmann::json filter_to_json(const FirFilter& f);
FirFilter filter_from_json(const nlohmann::json& j);

/// PTM as CSV with Pauli-string row/column headers.
void ptm_to_csv(const RealMatrix& ptm, const std::filesystem::path& path);

/// Pauli decomposition with standard errors (label,value,stderr rows).
void pauli_decomposition_to_csv(const RealVector& coeffs, const RealVector& errors,
                                int n_qubits, const std::filesystem::path& path);

}  // namespace corrtomo

#endif
