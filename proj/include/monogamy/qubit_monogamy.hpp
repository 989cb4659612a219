#pragma once

#include <map>
#include <span>

#include "json.hpp"

#include "monogamy/qubit_core.hpp"

namespace monogamy {

inline constexpr double kDefaultQubitTolerance = 1e-9;

/// sigma_y (x) sigma_y in the computational basis.
const Eigen::Matrix4cd& spin_flip_operator();

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

/// Squared concurrence. For two qubits this equals the convex-roof tangle.
double tangle_two_qubit(const DensityMatrix& rho);

/// H(x) = -x log2 x - (1-x) log2(1-x), with H(0) = H(1) = 0.
double binary_entropy(double x);

/// f(C) = H[(1 + sqrt(1 - C^2)) / 2].
double eof_from_concurrence(double c);

double entanglement_of_formation(const DensityMatrix& rho);

/// (||rho^T_A||_1 - 1) / 2 for transposition on `subsystem`.
double negativity(const DensityMatrix& rho, std::span<const int> subsystem);

/// Tangle between one qubit and the rest of a pure state: 4 det(rho_focus).
double pure_tangle_one_vs_rest(const QubitPureState& psi, int focus);

struct TangleDecomposition {
  int focus = 0;
  double one_vs_rest = 0.0;
  std::map<int, double> pairwise;  // partner -> tangle of the two-qubit reduction
  double residual = 0.0;
};

/// Three-way tangle tau_{focus|a|b} of a pure three-qubit state.
TangleDecomposition residual_tangle_three_qubits(const QubitPureState& psi, int focus);

struct MonogamyReport {
  TangleDecomposition decomposition;
  double tolerance = kDefaultQubitTolerance;
  bool holds = true;

  nlohmann::json to_json() const;
};

/// N-qubit monogamy check for one focus qubit of a pure state (3 <= n <= 10).
MonogamyReport ckw_check(const QubitPureState& psi, int focus,
                         double tolerance = kDefaultQubitTolerance);

}  // namespace monogamy
