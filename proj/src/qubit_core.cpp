#include "monogamy/qubit_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "monogamy/error.hpp"

namespace monogamy {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kEntropyCutoff = 1e-14;

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    fail(ErrorKind::dimension,
         "qubit count " + std::to_string(n_qubits) + " outside [1, " +
             std::to_string(kMaxQubits) + "]");
  }
}

Eigen::Index dim_of(int n_qubits) { return Eigen::Index{1} << n_qubits; }

// Scatters the bits of `value` onto the positions of `qubits` in an n-qubit index.
std::size_t scatter(std::size_t value, const std::vector<int>& qubits, int n) {
  std::size_t out = 0;
  const int k = static_cast<int>(qubits.size());
  for (int j = 0; j < k; ++j) {
    const std::size_t b = (value >> (k - 1 - j)) & 1U;
    out |= b << (n - 1 - qubits[static_cast<std::size_t>(j)]);
  }
  return out;
}

}  // namespace

QubitPureState::QubitPureState(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(n_qubits_);
  if (amplitudes_.size() != dim_of(n_qubits_)) {
    fail(ErrorKind::dimension, "amplitude vector has length " +
                                   std::to_string(amplitudes_.size()) + ", expected 2^" +
                                   std::to_string(n_qubits_));
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTolerance) {
    fail(ErrorKind::state, "pure state is not normalized");
  }
}

QubitPureState QubitPureState::normalized(int n_qubits, Eigen::VectorXcd amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) fail(ErrorKind::state, "cannot normalize a zero vector");
  amplitudes /= norm;
  return QubitPureState(n_qubits, std::move(amplitudes));
}

QubitPureState QubitPureState::basis(int n_qubits, std::size_t index) {
  check_qubit_count(n_qubits);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_of(n_qubits));
  if (static_cast<Eigen::Index>(index) >= v.size()) {
    fail(ErrorKind::dimension, "basis index out of range");
  }
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return QubitPureState(n_qubits, std::move(v));
}

QubitPureState QubitPureState::haar_random(int n_qubits, Rng& rng) {
  check_qubit_count(n_qubits);
  return normalized(n_qubits, complex_ginibre(dim_of(n_qubits), 1, rng).col(0));
}

DensityMatrix::DensityMatrix(int n_qubits, Eigen::MatrixXcd matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  check_qubit_count(n_qubits_);
  const Eigen::Index d = dim_of(n_qubits_);
  if (matrix_.rows() != d || matrix_.cols() != d) {
    fail(ErrorKind::dimension, "density matrix must be 2^n x 2^n");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    fail(ErrorKind::state, "density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > kTraceTolerance) {
    fail(ErrorKind::state, "density matrix does not have unit trace");
  }
  if (eigenvalues().minCoeff() < kEigenvalueFloor) {
    fail(ErrorKind::state, "density matrix is not positive semidefinite");
  }
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

QubitPartition::QubitPartition(int n_qubits, std::vector<int> kept)
    : n_qubits_(n_qubits), kept_(std::move(kept)) {
  check_qubit_count(n_qubits_);
  std::sort(kept_.begin(), kept_.end());
  if (kept_.empty()) fail(ErrorKind::dimension, "partition keeps no qubits");
  if (std::adjacent_find(kept_.begin(), kept_.end()) != kept_.end()) {
    fail(ErrorKind::dimension, "partition lists a qubit twice");
  }
  if (kept_.front() < 0 || kept_.back() >= n_qubits_) {
    fail(ErrorKind::dimension, "partition index out of range");
  }
  for (int q = 0; q < n_qubits_; ++q) {
    if (!std::binary_search(kept_.begin(), kept_.end(), q)) traced_.push_back(q);
  }
}

DensityMatrix to_density_matrix(const QubitPureState& psi) {
  const Eigen::VectorXcd& a = psi.amplitudes();
  return DensityMatrix(psi.n_qubits(), a * a.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitPartition& part) {
  if (part.n_qubits() != rho.n_qubits()) {
    fail(ErrorKind::dimension, "partition and state disagree on qubit count");
  }
  const int n = rho.n_qubits();
  const auto& kept = part.kept();
  const auto& traced = part.traced();
  const std::size_t dk = std::size_t{1} << kept.size();
  const std::size_t dt = std::size_t{1} << traced.size();

  std::vector<std::size_t> kept_index(dk), traced_index(dt);
  for (std::size_t a = 0; a < dk; ++a) kept_index[a] = scatter(a, kept, n);
  for (std::size_t t = 0; t < dt; ++t) traced_index[t] = scatter(t, traced, n);

  const Eigen::MatrixXcd& m = rho.matrix();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dk),
                                                static_cast<Eigen::Index>(dk));
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        acc += m(static_cast<Eigen::Index>(kept_index[a] | traced_index[t]),
                 static_cast<Eigen::Index>(kept_index[b] | traced_index[t]));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return DensityMatrix(static_cast<int>(kept.size()), std::move(out));
}

DensityMatrix reduced_state(const QubitPureState& psi, const QubitPartition& part) {
  if (part.n_qubits() != psi.n_qubits()) {
    fail(ErrorKind::dimension, "partition and state disagree on qubit count");
  }
  const int n = psi.n_qubits();
  const auto& kept = part.kept();
  const auto& traced = part.traced();
  const Eigen::Index dk = Eigen::Index{1} << kept.size();
  const Eigen::Index dt = Eigen::Index{1} << traced.size();

  // Reshape amplitudes into a dk x dt coefficient matrix M; rho_kept = M M^dagger.
  Eigen::MatrixXcd coeff(dk, dt);
  for (Eigen::Index a = 0; a < dk; ++a) {
    const std::size_t ia = scatter(static_cast<std::size_t>(a), kept, n);
    for (Eigen::Index t = 0; t < dt; ++t) {
      coeff(a, t) = psi.amplitudes()(
          static_cast<Eigen::Index>(ia | scatter(static_cast<std::size_t>(t), traced, n)));
    }
  }
  Eigen::MatrixXcd out = coeff * coeff.adjoint();
  // Enforce exact Hermiticity; the product is Hermitian only up to rounding.
  out = (0.5 * (out + out.adjoint())).eval();
  return DensityMatrix(static_cast<int>(kept.size()), std::move(out));
}

Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, std::span<const int> subsystem) {
  return partial_transpose(rho.matrix(), rho.n_qubits(), subsystem);
}

Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& m, int n,
                                   std::span<const int> subsystem) {
  check_qubit_count(n);
  const Eigen::Index d = dim_of(n);
  if (m.rows() != d || m.cols() != d) {
    fail(ErrorKind::dimension, "operator must be 2^n x 2^n");
  }
  std::vector<int> sub(subsystem.begin(), subsystem.end());
  std::sort(sub.begin(), sub.end());
  sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
  if (sub.empty() || static_cast<int>(sub.size()) >= n) {
    fail(ErrorKind::dimension, "partial transpose needs a proper nonempty subsystem");
  }
  if (sub.front() < 0 || sub.back() >= n) {
    fail(ErrorKind::dimension, "partial transpose index out of range");
  }
  std::size_t mask = 0;
  for (int q : sub) mask |= std::size_t{1} << (n - 1 - q);

  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      // Swap the subsystem bits between row and column index.
      const std::size_t ri = (ui & ~mask) | (uj & mask);
      const std::size_t rj = (uj & ~mask) | (ui & mask);
      out(i, j) = m(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(rj));
    }
  }
  return out;
}

QubitPureState bell_state() { return ghz_state(2); }

QubitPureState ghz_state(int n_qubits) {
  check_qubit_count(n_qubits);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_of(n_qubits));
  v(0) = v(v.size() - 1) = 1.0;
  return QubitPureState::normalized(n_qubits, std::move(v));
}

QubitPureState w_state(int n_qubits) {
  check_qubit_count(n_qubits);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_of(n_qubits));
  for (int q = 0; q < n_qubits; ++q) v(Eigen::Index{1} << q) = 1.0;
  return QubitPureState::normalized(n_qubits, std::move(v));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : rho.eigenvalues()) {
    if (lambda > kEntropyCutoff) s -= lambda * std::log2(lambda);
  }
  return std::max(0.0, s);
}

double linear_entropy(const DensityMatrix& rho) {
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
  return 1.0 - rho.matrix().squaredNorm();
}

}  // namespace monogamy
