#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "monogamy/random.hpp"

namespace monogamy {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 10;

/// Normalized pure state of n qubits. Qubit 0 is the leftmost tensor factor,
/// so basis index i lists the qubit values big-endian: |i_0 i_1 ... i_{n-1}>.
class QubitPureState {
 public:
  /// Validates length 2^n and unit norm (within 1e-12).
  QubitPureState(int n_qubits, Eigen::VectorXcd amplitudes);

  /// Rescales an arbitrary nonzero vector to unit norm.
  static QubitPureState normalized(int n_qubits, Eigen::VectorXcd amplitudes);
  static QubitPureState basis(int n_qubits, std::size_t index);
  /// Haar-random state: a normalized vector of i.i.d. complex Gaussians.
  static QubitPureState haar_random(int n_qubits, Rng& rng);

  int n_qubits() const noexcept { return n_qubits_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  Eigen::Index dimension() const noexcept { return amplitudes_.size(); }

 private:
  int n_qubits_;
  Eigen::VectorXcd amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator on n qubits.
/// Validated on construction; operations downstream assume validity.
class DensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kTraceTolerance = 1e-12;
  static constexpr double kEigenvalueFloor = -1e-10;

  DensityMatrix(int n_qubits, Eigen::MatrixXcd matrix);

  int n_qubits() const noexcept { return n_qubits_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  Eigen::Index dimension() const noexcept { return matrix_.rows(); }

  /// Eigenvalues in ascending order.
  Eigen::VectorXd eigenvalues() const;

 private:
  int n_qubits_;
  Eigen::MatrixXcd matrix_;
};

/// Split of {0..n-1} into kept and traced qubits, both sorted.
class QubitPartition {
 public:
  QubitPartition(int n_qubits, std::vector<int> kept);

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<int>& kept() const noexcept { return kept_; }
  const std::vector<int>& traced() const noexcept { return traced_; }

 private:
  int n_qubits_;
  std::vector<int> kept_;
  std::vector<int> traced_;
};

DensityMatrix to_density_matrix(const QubitPureState& psi);

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitPartition& part);

/// Reduced state of a pure state on part.kept(), computed from amplitudes
/// without forming the full 2^n x 2^n projector.
DensityMatrix reduced_state(const QubitPureState& psi, const QubitPartition& part);

/// Transposition on the qubits listed in `subsystem` only. The result is
/// Hermitian with unit trace but need not be positive.
Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, std::span<const int> subsystem);
/// Same map on any 2^n x 2^n operator.
Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& m, int n_qubits,
                                   std::span<const int> subsystem);

/// (|00> + |11>) / sqrt2.
QubitPureState bell_state();
/// (|0...0> + |1...1>) / sqrt2 on n qubits.
QubitPureState ghz_state(int n_qubits);
/// Equal superposition of the n single-excitation basis states.
QubitPureState w_state(int n_qubits);

/// Von Neumann entropy in bits; eigenvalues at or below 1e-14 are skipped.
double von_neumann_entropy(const DensityMatrix& rho);

/// 1 - Tr rho^2.
double linear_entropy(const DensityMatrix& rho);

}  // namespace monogamy
