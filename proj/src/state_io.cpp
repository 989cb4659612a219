#include "monogamy/state_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "monogamy/error.hpp"

namespace monogamy {

namespace {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(ErrorKind::parse, "complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

int int_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    fail(ErrorKind::parse, std::string("missing integer field '") + key + "'");
  }
  return doc[key].get<int>();
}

const json& array_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    fail(ErrorKind::parse, std::string("missing array field '") + key + "'");
  }
  return doc[key];
}

}  // namespace

json to_json(const QubitPureState& psi) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < psi.dimension(); ++i) amps.push_back(complex_to_json(psi.amplitudes()(i)));
  return {{"n_qubits", psi.n_qubits()}, {"amplitudes", amps}};
}

json to_json(const DensityMatrix& rho) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < rho.dimension(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < rho.dimension(); ++j) row.push_back(complex_to_json(rho.matrix()(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"n_qubits", rho.n_qubits()}, {"matrix", rows}};
}

json to_json(const CovarianceMatrix& cm) {
  json rows = json::array();
  const Eigen::MatrixXd& s = cm.sigma();
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < s.cols(); ++j) row.push_back(s(i, j));
    rows.push_back(std::move(row));
  }
  return {{"n_modes", cm.n_modes()}, {"sigma", rows}};
}

json to_json(const AnyState& state) {
  return std::visit([](const auto& s) { return to_json(s); }, state);
}

AnyState state_from_json(const json& doc) {
  if (!doc.is_object()) fail(ErrorKind::parse, "state document must be a JSON object");
  if (doc.contains("n_modes")) {
    const int n = int_field(doc, "n_modes");
    const json& rows = array_field(doc, "sigma");
    if (n < 1 || rows.size() != static_cast<std::size_t>(2 * n)) {
      fail(ErrorKind::dimension, "sigma must have 2 * n_modes rows");
    }
    Eigen::MatrixXd sigma(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i) {
      const json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(2 * n)) {
        fail(ErrorKind::dimension, "sigma must be square");
      }
      for (int j = 0; j < 2 * n; ++j) {
        const json& v = row[static_cast<std::size_t>(j)];
        if (!v.is_number()) fail(ErrorKind::parse, "sigma entries must be numbers");
        sigma(i, j) = v.get<double>();
      }
    }
    return CovarianceMatrix(std::move(sigma));
  }
  const int n = int_field(doc, "n_qubits");
  if (n < 1 || n > kMaxQubits) fail(ErrorKind::dimension, "n_qubits outside [1, 10]");
  const std::size_t dim = std::size_t{1} << n;
  if (doc.contains("amplitudes")) {
    const json& amps = array_field(doc, "amplitudes");
    if (amps.size() != dim) fail(ErrorKind::dimension, "amplitudes must have 2^n_qubits entries");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(amps[i]);
    return QubitPureState(n, std::move(v));
  }
  const json& rows = array_field(doc, "matrix");
  if (rows.size() != dim) fail(ErrorKind::dimension, "matrix must be 2^n_qubits square");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    if (!rows[i].is_array() || rows[i].size() != dim) {
      fail(ErrorKind::dimension, "matrix must be 2^n_qubits square");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = complex_from_json(rows[i][j]);
    }
  }
  return DensityMatrix(n, std::move(m));
}

AnyState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot read state file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, "invalid JSON in " + path.string() + ": " + e.what());
  }
  return state_from_json(doc);
}

void write_text(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot open " + path.string() + " for writing");
  out << contents;
  out.flush();
  if (!out) fail(ErrorKind::io, "failed writing " + path.string());
}

void save_state(const std::filesystem::path& path, const AnyState& state) {
  write_text(path, to_json(state).dump(2) + "\n");
}

AnyState canonical_state(const std::string& name, double r) {
  if (name == "bell") return bell_state();
  if (name == "ghz") return ghz_state(3);
  if (name == "w") return w_state(3);
  if (name == "ghz4") return ghz_state(4);
  if (name == "w4") return w_state(4);
  if (name == "tms") return two_mode_squeezed(r);
  if (name == "ghzw-cv") return ghzw_three_mode(r);
  fail(ErrorKind::parse, "unknown canonical state '" + name + "'");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  for (int precision = 1; precision <= 12; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace monogamy
