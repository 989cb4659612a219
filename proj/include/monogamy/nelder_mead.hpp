#pragma once

#include <functional>
#include <span>
#include <vector>

namespace monogamy {

struct NelderMeadOptions {
  double initial_step = 0.3;
  int max_evaluations = 20000;
  /// Converged when the spread of simplex values and the simplex diameter both
  /// fall below these.
  double value_tolerance = 1e-15;
  double step_tolerance = 1e-10;
  /// Rebuild the simplex around the best vertex after convergence, at most this
  /// many times, as long as each rebuild still improves the value.
  int max_rebuilds = 8;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Downhill simplex minimization with dimension-adaptive coefficients.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& options = {});

}  // namespace monogamy
