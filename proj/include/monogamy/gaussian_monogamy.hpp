#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "monogamy/gaussian_core.hpp"
#include "monogamy/nelder_mead.hpp"

namespace monogamy {

inline constexpr double kDefaultGaussianTolerance = 1e-7;
inline constexpr double kPureTolerance = 1e-8;
inline constexpr int kTwoModeRoofRestarts = 24;
inline constexpr int kMultiModeRoofRestarts = 32;
/// Largest mode count accepted by the roof minimizer.
inline constexpr int kMaxRoofModes = 6;

/// Logarithmic negativity (base 2) of mode `mode` versus the rest.
double log_negativity(const CovarianceMatrix& cm, int mode);

/// (||rho^T||_1 - 1) / 2 with ||rho^T||_1 = prod over partially transposed
/// symplectic eigenvalues below one of their inverses.
double negativity_gaussian(const CovarianceMatrix& cm, int mode);

/// Contangle log2^2(1/mu - sqrt(1/mu^2 - 1)) of a pure 1 x N state with local
/// purity mu, written in terms of sqrt(det sigma_local) = 1/mu.
double contangle_from_local_det(double local_det);

enum class ContangleMethod { pure_closed_form, gaussian_roof_minimization };

std::string to_string(ContangleMethod method);

struct OptimizerInfo {
  int iterations = 0;
  int evaluations = 0;
  int restarts = 0;
  int best_restart = -1;
  /// Minimum eigenvalue of sigma - sigma_p at the reported decomposition.
  double achieved_feasibility = 0.0;
};

struct ContangleReport {
  int focus = 0;
  std::vector<int> rest;
  double value = 0.0;
  ContangleMethod method = ContangleMethod::pure_closed_form;
  OptimizerInfo optimizer_info;
  /// Pure CM sigma_p <= sigma attaining `value` (roof minimization only).
  Eigen::MatrixXd decomposition;

  nlohmann::json to_json() const;
};

struct RoofOptions {
  /// 0 selects 24 restarts for two modes and 32 for more.
  int restarts = 0;
  std::uint64_t seed = 0;
  double feasibility_tolerance = 1e-9;
  /// Bound on the squeezing parameters of the trial pure states, applied in
  /// the Williamson frame of the input.
  double max_squeezing = 3.0;
  NelderMeadOptions local{};
};

/// Contangle of `mode` versus the rest for a pure state (closed form).
ContangleReport contangle_pure(const CovarianceMatrix& cm, int mode);

/// Gaussian contangle of a two-mode state: inf E_tau(sigma_p) over pure
/// sigma_p <= sigma. The result is an upper bound on the true contangle.
ContangleReport gaussian_contangle(const CovarianceMatrix& cm, const RoofOptions& options = {});

/// Same roof for `mode` versus all remaining modes of an N-mode state.
ContangleReport gaussian_contangle_one_vs_rest(const CovarianceMatrix& cm, int mode,
                                               const RoofOptions& options = {});

struct FocusResidual {
  int focus = 0;
  double one_vs_rest = 0.0;
  ContangleMethod one_vs_rest_method = ContangleMethod::pure_closed_form;
  std::map<int, double> pairwise;
  double residual = 0.0;
  bool optimizer_failed = false;
};

struct GaussianMonogamyReport {
  std::vector<FocusResidual> foci;
  double minimum_residual = 0.0;
  int argmin_focus = 0;
  bool pure = false;

  nlohmann::json to_json() const;
};

/// Residual contangle for each focus of a three-mode state and the minimum
/// over foci. Pure inputs use the closed form for the one-vs-rest terms,
/// mixed inputs the 1 x 2 roof; pairwise terms always use the two-mode roof.
GaussianMonogamyReport residual_gaussian_contangle(const CovarianceMatrix& cm,
                                                   const RoofOptions& options = {});

struct PromiscuityRow {
  double r = 0.0;
  double pairwise_gtau = 0.0;
  double one_vs_rest_etau = 0.0;
  double min_residual = 0.0;
  int argmin_focus = 0;
};

std::vector<PromiscuityRow> promiscuity_sweep(std::span<const double> r_grid,
                                              const RoofOptions& options = {});

}  // namespace monogamy
