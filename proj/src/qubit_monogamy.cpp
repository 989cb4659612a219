#include "monogamy/qubit_monogamy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "monogamy/error.hpp"

namespace monogamy {

namespace {

// Eigenvalues of a two-qubit state at or below this are treated as exact zeros
// when building the square-root factor for the concurrence.
constexpr double kRankCutoff = 1e-14;

void require_two_qubits(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) {
    fail(ErrorKind::dimension, "expected a two-qubit state, got " +
                                   std::to_string(rho.n_qubits()) + " qubits");
  }
}

void require_index(int index, int n) {
  if (index < 0 || index >= n) {
    fail(ErrorKind::dimension, "qubit index " + std::to_string(index) + " out of range");
  }
}

}  // namespace

const Eigen::Matrix4cd& spin_flip_operator() {
  static const Eigen::Matrix4cd yy = [] {
    Eigen::Matrix2cd sy;
    sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = sy(i, j) * sy;
    return out;
  }();
  return yy;
}

double concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho);
  // With rho = W W^dagger, the square roots of the eigenvalues of
  // rho (Y rho* Y) are the singular values of the symmetric matrix W^T Y W.
  // Working with singular values avoids taking square roots of eigenvalues
  // that are zero up to rounding.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho.matrix());
  const Eigen::Vector4d& p = es.eigenvalues();
  int rank = 0;
  for (int i = 0; i < 4; ++i) rank += p(i) > kRankCutoff ? 1 : 0;
  if (rank == 0) return 0.0;

  Eigen::MatrixXcd w(4, rank);
  for (int i = 4 - rank, c = 0; i < 4; ++i, ++c) w.col(c) = std::sqrt(p(i)) * es.eigenvectors().col(i);

  const Eigen::MatrixXcd t = w.transpose() * spin_flip_operator() * w;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
  const Eigen::VectorXd& s = svd.singularValues();  // descending
  double c = s(0);
  for (Eigen::Index i = 1; i < s.size(); ++i) c -= s(i);
  return std::clamp(c, 0.0, 1.0);
}

double tangle_two_qubit(const DensityMatrix& rho) {
  const double c = concurrence(rho);
  return c * c;
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double entanglement_of_formation(const DensityMatrix& rho) {
  return eof_from_concurrence(concurrence(rho));
}

double negativity(const DensityMatrix& rho, std::span<const int> subsystem) {
  const Eigen::MatrixXcd pt = partial_transpose(rho, subsystem);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
  double negative_sum = 0.0;
  for (double lambda : es.eigenvalues()) {
    if (lambda < 0.0) negative_sum += lambda;
  }
  return -negative_sum;
}

double pure_tangle_one_vs_rest(const QubitPureState& psi, int focus) {
  if (psi.n_qubits() < 2) fail(ErrorKind::dimension, "one-vs-rest tangle needs n >= 2");
  require_index(focus, psi.n_qubits());
  const DensityMatrix reduced = reduced_state(psi, QubitPartition(psi.n_qubits(), {focus}));
  const Eigen::MatrixXcd& m = reduced.matrix();
  const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  return std::clamp(4.0 * det, 0.0, 1.0);
}

namespace {

TangleDecomposition decompose(const QubitPureState& psi, int focus) {
  const int n = psi.n_qubits();
  TangleDecomposition out;
  out.focus = focus;
  out.one_vs_rest = pure_tangle_one_vs_rest(psi, focus);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == focus) continue;
    const double t = tangle_two_qubit(reduced_state(psi, QubitPartition(n, {focus, j})));
    out.pairwise[j] = t;
    sum += t;
  }
  out.residual = out.one_vs_rest - sum;
  return out;
}

}  // namespace

TangleDecomposition residual_tangle_three_qubits(const QubitPureState& psi, int focus) {
  if (psi.n_qubits() != 3) fail(ErrorKind::dimension, "three-way tangle needs three qubits");
  require_index(focus, 3);
  return decompose(psi, focus);
}

MonogamyReport ckw_check(const QubitPureState& psi, int focus, double tolerance) {
  if (psi.n_qubits() < 3 || psi.n_qubits() > kMaxQubits) {
    fail(ErrorKind::dimension, "monogamy check supports 3 to 10 qubits");
  }
  if (!(tolerance > 0.0)) fail(ErrorKind::domain, "tolerance must be positive");
  require_index(focus, psi.n_qubits());
  MonogamyReport report;
  report.decomposition = decompose(psi, focus);
  report.tolerance = tolerance;
  report.holds = report.decomposition.residual >= -tolerance;
  return report;
}

nlohmann::json MonogamyReport::to_json() const {
  nlohmann::json pairwise = nlohmann::json::object();
  for (const auto& [j, t] : decomposition.pairwise) pairwise[std::to_string(j)] = t;
  return {{"focus", decomposition.focus},
          {"one_vs_rest", decomposition.one_vs_rest},
          {"pairwise", pairwise},
          {"residual", decomposition.residual},
          {"holds", holds},
          {"tolerance", tolerance}};
}

}  // namespace monogamy
