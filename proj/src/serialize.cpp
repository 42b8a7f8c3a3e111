#include "corrtomo/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace corrtomo {

using nlohmann::json;

namespace {

json cpx_to_json(const Cpx& c) { return json::array({c.real(), c.imag()}); }

Cpx cpx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::runtime_error("expected [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(cpx_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw std::runtime_error("expected a non-empty array of rows");
    auto rows = Eigen::Index(j.size());
    auto cols = Eigen::Index(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (Eigen::Index(j[std::size_t(r)].size()) != cols)
            throw std::runtime_error("ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = cpx_from_json(j[std::size_t(r)][std::size_t(c)]);
    }
    return m;
}

json kernel_to_json(const Kernel& k) {
    json weights = json::array(), baseline = json::array();
    for (const Cpx& w : k.weights) weights.push_back(cpx_to_json(w));
    for (const Cpx& b : k.baseline) baseline.push_back(cpx_to_json(b));
    return {{"weights", weights},
            {"baseline", baseline},
            {"window_end", k.window_end},
            {"scale", k.scale},
            {"offset", k.offset}};
}

Kernel kernel_from_json(const json& j) {
    Kernel k;
    for (const auto& w : j.at("weights")) k.weights.push_back(cpx_from_json(w));
    for (const auto& b : j.at("baseline")) k.baseline.push_back(cpx_from_json(b));
    k.window_end = j.at("window_end").get<std::size_t>();
    k.scale = j.at("scale").get<double>();
    k.offset = j.at("offset").get<double>();
    if (k.weights.size() != k.baseline.size() || k.window_end > k.weights.size())
        throw std::runtime_error("inconsistent kernel file");
    return k;
}

json filter_to_json(const FirFilter& f) {
    return {{"taps", f.taps}, {"cutoff_hz", f.cutoff_hz}, {"window", "hamming"}};
}

FirFilter filter_from_json(const json& j) {
    FirFilter f;
    f.taps = j.at("taps").get<std::vector<double>>();
    f.cutoff_hz = j.at("cutoff_hz").get<double>();
    if (j.at("window").get<std::string>() != "hamming")
        throw std::runtime_error("unknown filter window");
    return f;
}

void ptm_to_csv(const RealMatrix& ptm, const std::filesystem::path& path) {
    int n = qubit_count(Eigen::Index(std::llround(std::sqrt(double(ptm.rows())))));
    auto labels = pauli_labels(n);
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (const auto& l : labels) os << ',' << l;
    os << '\n';
    for (Eigen::Index i = 0; i < ptm.rows(); ++i) {
        os << labels[std::size_t(i)];
        for (Eigen::Index j = 0; j < ptm.cols(); ++j) os << ',' << ptm(i, j);
        os << '\n';
    }
}

void pauli_decomposition_to_csv(const RealVector& coeffs, const RealVector& errors,
                                int n_qubits, const std::filesystem::path& path) {
    auto labels = pauli_labels(n_qubits);
    if (coeffs.size() != Eigen::Index(labels.size()) || errors.size() != coeffs.size())
        throw std::invalid_argument("pauli_decomposition_to_csv: length mismatch");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << "pauli,value,stderr\n";
    for (std::size_t a = 0; a < labels.size(); ++a)
        os << labels[a] << ',' << coeffs(Eigen::Index(a)) << ','
           << errors(Eigen::Index(a)) << '\n';
}

}  // namespace corrtomo
