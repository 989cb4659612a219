#include "monogamy/gaussian_monogamy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "monogamy/error.hpp"

namespace monogamy {

namespace {

constexpr double kLog2E = 1.4426950408889634;
constexpr double kArgminTieTolerance = 1e-10;
constexpr double kBarrierStart = 1e-2;
constexpr double kBarrierEnd = 1e-10;
constexpr double kBarrierShrink = 0.01;
constexpr double kScreenBarrier = 1e-6;
constexpr int kPolishedPaths = 3;

void check_mode(const CovarianceMatrix& cm, int mode) {
  if (mode < 0 || mode >= cm.n_modes()) {
    fail(ErrorKind::dimension, "mode index " + std::to_string(mode) + " out of range");
  }
}

void check_bipartition(const CovarianceMatrix& cm, int mode) {
  if (cm.n_modes() < 2) fail(ErrorKind::dimension, "a bipartition needs at least two modes");
  check_mode(cm, mode);
}

std::vector<int> complement(int n, int mode) {
  std::vector<int> out;
  for (int k = 0; k < n; ++k)
    if (k != mode) out.push_back(k);
  return out;
}

// Sum of -log2 of the partially transposed symplectic eigenvalues below one.
double log_negativity_unchecked(const CovarianceMatrix& cm, int mode) {
  const SymplecticSpectrum pt = symplectic_spectrum(partial_transpose_cm(cm, mode));
  double e = 0.0;
  for (double n : pt.values) {
    if (n < 1.0) e -= std::log2(n);
  }
  return e;
}

constexpr int kMaxFrame = 2 * kMaxRoofModes;
using FrameMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxFrame, kMaxFrame>;
using SmallComplex =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxRoofModes,
                  kMaxRoofModes>;

// Search space for the Gaussian roof. Trial pure states are written in the
// Williamson frame of the input, sigma = S0^T nu S0, as
//   sigma_p = S0^T (I_frozen (+) K^T Z^2 K) S0,
// with K the passive image of a unitary U (phases times Givens rotations,
// which reach all of U(M)) and Z = diag(e^{z_k}, e^{-z_k})
// bounded squeezings, acting on the M frame modes whose symplectic eigenvalue
// exceeds one (M^2 + M parameters). Frame modes with nu_k = 1 are pure and
// every pure sigma_p <= sigma must be vacuum there. The all-zero parameter
// vector gives sigma_p = S0^T S0 <= sigma.
class PureDecompositionSearch {
 public:
  static constexpr double kPureModeTolerance = 1e-7;

  PureDecompositionSearch(const CovarianceMatrix& cm, int focus, const RoofOptions& options)
      : sigma_(cm.sigma()), n_(cm.n_modes()), focus_(focus), options_(options) {
    const WilliamsonForm w = williamson(cm);
    // Reorder frame rows so that free modes come first.
    std::vector<int> order;
    for (int k = 0; k < n_; ++k)
      if (w.nu(k) > 1.0 + kPureModeTolerance) order.push_back(k);
    m_ = static_cast<int>(order.size());
    nu_free_.resize(2 * m_);
    for (int k = 0; k < m_; ++k) {
      nu_free_(2 * k) = w.nu(order[static_cast<std::size_t>(k)]);
      nu_free_(2 * k + 1) = nu_free_(2 * k);
    }
    for (int k = 0; k < n_; ++k)
      if (w.nu(k) <= 1.0 + kPureModeTolerance) order.push_back(k);
    frame_.resize(2 * n_, 2 * n_);
    for (int k = 0; k < n_; ++k) {
      frame_.row(2 * k) = w.s.matrix().row(2 * order[static_cast<std::size_t>(k)]);
      frame_.row(2 * k + 1) = w.s.matrix().row(2 * order[static_cast<std::size_t>(k)] + 1);
    }
    // sigma_p focus block = F^T F + F_free^T (gamma_free - I) F_free.
    const Eigen::MatrixXd f = frame_.middleCols(2 * focus_, 2);
    focus_free_ = f.topRows(2 * m_);
    focus_base_ = f.transpose() * f - focus_free_.transpose() * focus_free_;
  }

  int dimension() const { return m_ * m_ + m_; }
  int free_modes() const { return m_; }

  struct Trial {
    double etau = 0.0;
    double min_eig = 0.0;
  };

  // Free block of the frame-space trial state, K^T Z^2 K.
  FrameMatrix free_block(std::span<const double> p) const {
    // U = diag(e^{i phi}) times a Givens rotation for every mode pair.
    SmallComplex u = SmallComplex::Zero(m_, m_);
    std::size_t idx = 0;
    for (int k = 0; k < m_; ++k) u(k, k) = std::polar(1.0, p[idx++]);
    for (int j = 0; j < m_; ++j) {
      for (int k = j + 1; k < m_; ++k) {
        const double c = std::cos(p[idx]);
        const std::complex<double> e = std::polar(std::sin(p[idx]), p[idx + 1]);
        idx += 2;
        for (int col = 0; col < m_; ++col) {
          const std::complex<double> a = u(j, col);
          const std::complex<double> b = u(k, col);
          u(j, col) = c * a - std::conj(e) * b;
          u(k, col) = e * a + c * b;
        }
      }
    }
    // Z K with Z = diag(e^{z}, e^{-z}) per mode; gamma = (Z K)^T (Z K).
    FrameMatrix zk(2 * m_, 2 * m_);
    const double zmax = options_.max_squeezing;
    for (int k = 0; k < m_; ++k) {
      const double z = zmax * std::tanh(p[idx++] / zmax);
      const double up = std::exp(z);
      const double down = 1.0 / up;
      for (int j = 0; j < m_; ++j) {
        const double x = u(j, k).real();
        const double y = u(j, k).imag();
        zk(2 * k, 2 * j) = up * x;
        zk(2 * k, 2 * j + 1) = up * y;
        zk(2 * k + 1, 2 * j) = -down * y;
        zk(2 * k + 1, 2 * j + 1) = down * x;
      }
    }
    FrameMatrix gamma(2 * m_, 2 * m_);
    gamma.noalias() = zk.transpose() * zk;
    return gamma;
  }

  Eigen::MatrixXd pure_state(std::span<const double> p) const {
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Identity(2 * n_, 2 * n_);
    if (m_ > 0) gamma.topLeftCorner(2 * m_, 2 * m_) = free_block(p);
    Eigen::MatrixXd out = frame_.transpose() * gamma * frame_;
    return 0.5 * (out + out.transpose());
  }

  // Contangle plus mu * barrier on nu - gamma in the frame, where the
  // constraint sigma_p <= sigma reads gamma_free <= diag(nu_free).
  double barrier_objective(std::span<const double> p, double mu) const {
    const FrameMatrix g = free_block(p);
    FrameMatrix d = -g;
    d.diagonal() += nu_free_;
    const Eigen::LLT<FrameMatrix> llt(d);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    if (!std::isfinite(log_det)) return std::numeric_limits<double>::infinity();
    return focus_contangle(g) - mu * log_det;
  }

  // Only the focus block of sigma_p enters the contangle.
  double focus_contangle(const FrameMatrix& g) const {
    Eigen::Matrix2d local = focus_base_;
    local.noalias() += focus_free_.transpose() * g * focus_free_;
    return contangle_from_local_det(local.determinant());
  }

  // Pull squeezings towards zero until the trial sits strictly inside.
  void make_interior(std::vector<double>& p) const {
    for (int attempt = 0; attempt < 60; ++attempt) {
      if (std::isfinite(barrier_objective(p, 1.0))) return;
      for (int i = m_ * m_; i < m_ * m_ + m_; ++i) p[static_cast<std::size_t>(i)] *= 0.5;
    }
    for (int i = m_ * m_; i < m_ * m_ + m_; ++i) p[static_cast<std::size_t>(i)] = 0.0;
  }

  Trial evaluate(std::span<const double> p) const {
    const Eigen::MatrixXd sp = pure_state(p);
    Trial t;
    t.etau = contangle_from_local_det(sp.block<2, 2>(2 * focus_, 2 * focus_).determinant());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma_ - sp, Eigen::EigenvaluesOnly);
    t.min_eig = es.eigenvalues()(0);
    return t;
  }

 private:
  Eigen::MatrixXd sigma_;
  Eigen::MatrixXd frame_;
  Eigen::VectorXd nu_free_;
  Eigen::MatrixXd focus_free_;
  Eigen::Matrix2d focus_base_;
  int n_;
  int m_ = 0;
  int focus_;
  RoofOptions options_;
};

ContangleReport roof_minimize(const CovarianceMatrix& cm, int focus, const RoofOptions& options) {
  require_physical(cm);
  if (cm.n_modes() > kMaxRoofModes) {
    fail(ErrorKind::dimension, "Gaussian roof minimization supports at most " +
                                   std::to_string(kMaxRoofModes) + " modes");
  }
  const int restarts = options.restarts > 0
                           ? options.restarts
                           : (cm.n_modes() == 2 ? kTwoModeRoofRestarts : kMultiModeRoofRestarts);
  const PureDecompositionSearch search(cm, focus, options);
  const int dim = search.dimension();

  ContangleReport report;
  report.focus = focus;
  report.rest = complement(cm.n_modes(), focus);
  report.method = ContangleMethod::gaussian_roof_minimization;
  report.optimizer_info.restarts = restarts;

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_params;
  double best_feasibility = 0.0;

  if (dim == 0) {
    // Pure input: sigma_p = sigma is the only candidate.
    const std::vector<double> none;
    const auto t = search.evaluate(none);
    report.value = t.etau;
    report.optimizer_info.restarts = 0;
    report.optimizer_info.best_restart = 0;
    report.optimizer_info.achieved_feasibility = t.min_eig;
    report.decomposition = search.pure_state(none);
    return report;
  }

  // Every restart follows the barrier path down to kScreenBarrier; the most
  // promising few are then polished at smaller mu.
  struct Path {
    std::vector<double> x;
    double barrier_value = 0.0;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_params;
    double feasibility = 0.0;
  };
  const auto consider = [&](Path& path, const std::vector<double>& p) {
    const auto t = search.evaluate(p);
    if (t.min_eig >= -options.feasibility_tolerance && t.etau < path.best) {
      path.best = t.etau;
      path.best_params = p;
      path.feasibility = t.min_eig;
    }
  };
  const auto follow = [&](Path& path, double mu_from, double mu_to, bool polish) {
    double step = options.local.initial_step;
    for (double mu = kBarrierStart; mu > mu_from * 1.5; mu *= kBarrierShrink) {
      step = std::max(0.3 * step, 1e-3);
    }
    for (double mu = mu_from; mu >= mu_to * 0.5; mu *= kBarrierShrink) {
      NelderMeadOptions local = options.local;
      local.initial_step = step;
      if (!polish) {
        local.value_tolerance = std::max(local.value_tolerance, 0.1 * mu);
        local.step_tolerance = std::max(local.step_tolerance, 1e-5);
        local.max_rebuilds = 0;
      }
      const Objective objective = [&](std::span<const double> p) {
        return search.barrier_objective(p, mu);
      };
      NelderMeadResult nm = nelder_mead(objective, path.x, local);
      report.optimizer_info.iterations += nm.iterations;
      report.optimizer_info.evaluations += nm.evaluations;
      path.x = std::move(nm.x);
      path.barrier_value = nm.value;
      consider(path, path.x);
      step = std::max(0.3 * step, 1e-3);
    }
  };

  const int m = search.free_modes();
  std::vector<Path> paths(static_cast<std::size_t>(restarts));
  for (int restart = 0; restart < restarts; ++restart) {
    std::vector<double> x0(static_cast<std::size_t>(dim), 0.0);
    if (restart > 0) {
      Rng rng = make_rng(options.seed, static_cast<std::uint64_t>(restart));
      std::uniform_real_distribution<double> angle(-M_PI, M_PI);
      std::uniform_real_distribution<double> squeeze(-0.5, 0.5);
      for (int i = 0; i < dim - m; ++i) x0[static_cast<std::size_t>(i)] = angle(rng);
      for (int i = dim - m; i < dim; ++i) x0[static_cast<std::size_t>(i)] = squeeze(rng);
    }
    search.make_interior(x0);
    Path& path = paths[static_cast<std::size_t>(restart)];
    path.x = x0;
    consider(path, x0);
    follow(path, kBarrierStart, kScreenBarrier, false);
  }

  std::vector<int> ranked(static_cast<std::size_t>(restarts));
  std::iota(ranked.begin(), ranked.end(), 0);
  std::stable_sort(ranked.begin(), ranked.end(), [&](int a, int b) {
    return paths[static_cast<std::size_t>(a)].barrier_value <
           paths[static_cast<std::size_t>(b)].barrier_value;
  });
  const int polished = std::min(restarts, kPolishedPaths);
  for (int k = 0; k < polished; ++k) {
    follow(paths[static_cast<std::size_t>(ranked[static_cast<std::size_t>(k)])],
           kScreenBarrier * kBarrierShrink, kBarrierEnd, true);
  }

  for (int restart = 0; restart < restarts; ++restart) {
    Path& path = paths[static_cast<std::size_t>(restart)];
    if (path.best < best) {
      best = path.best;
      best_params = std::move(path.best_params);
      best_feasibility = path.feasibility;
      report.optimizer_info.best_restart = restart;
    }
  }

  if (!std::isfinite(best)) {
    fail(ErrorKind::numerical, "Gaussian roof minimization found no feasible decomposition");
  }
  report.value = std::max(0.0, best);
  report.optimizer_info.achieved_feasibility = best_feasibility;
  report.decomposition = search.pure_state(best_params);
  return report;
}

}  // namespace

double log_negativity(const CovarianceMatrix& cm, int mode) {
  check_bipartition(cm, mode);
  require_physical(cm);
  return log_negativity_unchecked(cm, mode);
}

double negativity_gaussian(const CovarianceMatrix& cm, int mode) {
  check_bipartition(cm, mode);
  require_physical(cm);
  const SymplecticSpectrum pt = symplectic_spectrum(partial_transpose_cm(cm, mode));
  double trace_norm = 1.0;
  for (double n : pt.values) {
    if (n < 1.0) trace_norm /= n;
  }
  return 0.5 * (trace_norm - 1.0);
}

double contangle_from_local_det(double local_det) {
  // log(x - sqrt(x^2 - 1)) = -acosh(x) for x = sqrt(det) >= 1. acosh has
  // infinite slope at 1, so a determinant within rounding of 1 would otherwise
  // turn into a spurious 1e-15 contangle.
  if (local_det - 1.0 <= 16 * std::numeric_limits<double>::epsilon() * local_det) return 0.0;
  const double x = std::sqrt(local_det);
  const double e = kLog2E * std::acosh(x);
  return e * e;
}

std::string to_string(ContangleMethod method) {
  return method == ContangleMethod::pure_closed_form ? "pure_closed_form"
                                                      : "gaussian_roof_minimization";
}

ContangleReport contangle_pure(const CovarianceMatrix& cm, int mode) {
  check_bipartition(cm, mode);
  require_physical(cm);
  const double mu = purity(cm);
  if (std::abs(mu - 1.0) > kPureTolerance) {
    fail(ErrorKind::state,
         "contangle closed form needs a pure state (purity " + std::to_string(mu) +
             "); use the Gaussian contangle for mixed states");
  }
  ContangleReport report;
  report.focus = mode;
  report.rest = complement(cm.n_modes(), mode);
  report.method = ContangleMethod::pure_closed_form;
  report.value = contangle_from_local_det(cm.block(mode, mode).determinant());
  report.optimizer_info.achieved_feasibility = 0.0;
  return report;
}

ContangleReport gaussian_contangle(const CovarianceMatrix& cm, const RoofOptions& options) {
  if (cm.n_modes() != 2) fail(ErrorKind::dimension, "Gaussian contangle expects a two-mode state");
  return roof_minimize(cm, 0, options);
}

ContangleReport gaussian_contangle_one_vs_rest(const CovarianceMatrix& cm, int mode,
                                               const RoofOptions& options) {
  check_bipartition(cm, mode);
  return roof_minimize(cm, mode, options);
}

nlohmann::json ContangleReport::to_json() const {
  nlohmann::json out = {{"bipartition", {{"focus", focus}, {"rest", rest}}},
                        {"value", value},
                        {"method", to_string(method)}};
  if (method == ContangleMethod::gaussian_roof_minimization) {
    out["optimizer_info"] = {{"iterations", optimizer_info.iterations},
                             {"evaluations", optimizer_info.evaluations},
                             {"restarts", optimizer_info.restarts},
                             {"best_restart", optimizer_info.best_restart},
                             {"achieved_feasibility", optimizer_info.achieved_feasibility}};
  }
  return out;
}

GaussianMonogamyReport residual_gaussian_contangle(const CovarianceMatrix& cm,
                                                   const RoofOptions& options) {
  if (cm.n_modes() != 3) fail(ErrorKind::dimension, "residual contangle expects three modes");
  require_physical(cm);
  GaussianMonogamyReport report;
  report.pure = std::abs(purity(cm) - 1.0) <= kPureTolerance;

  // Pairwise Gaussian contangles, one roof per unordered pair.
  std::map<std::pair<int, int>, double> pair_value;
  std::map<std::pair<int, int>, bool> pair_failed;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const int modes[] = {i, j};
      RoofOptions pair_options = options;
      pair_options.seed = derive_seed(options.seed, static_cast<std::uint64_t>(10 + 3 * i + j));
      try {
        pair_value[{i, j}] = gaussian_contangle(reduced_cm(cm, modes), pair_options).value;
        pair_failed[{i, j}] = false;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::numerical) throw;
        pair_value[{i, j}] = std::numeric_limits<double>::quiet_NaN();
        pair_failed[{i, j}] = true;
      }
    }
  }

  for (int i = 0; i < 3; ++i) {
    FocusResidual f;
    f.focus = i;
    try {
      if (report.pure) {
        f.one_vs_rest = contangle_pure(cm, i).value;
        f.one_vs_rest_method = ContangleMethod::pure_closed_form;
      } else {
        RoofOptions focus_options = options;
        focus_options.seed = derive_seed(options.seed, static_cast<std::uint64_t>(i));
        f.one_vs_rest = gaussian_contangle_one_vs_rest(cm, i, focus_options).value;
        f.one_vs_rest_method = ContangleMethod::gaussian_roof_minimization;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::numerical) throw;
      f.one_vs_rest = std::numeric_limits<double>::quiet_NaN();
      f.optimizer_failed = true;
    }
    double sum = 0.0;
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      const auto key = std::minmax(i, j);
      f.pairwise[j] = pair_value[key];
      f.optimizer_failed = f.optimizer_failed || pair_failed[key];
      sum += pair_value[key];
    }
    f.residual = f.one_vs_rest - sum;
    report.foci.push_back(std::move(f));
  }

  bool any = false;
  for (const FocusResidual& f : report.foci) {
    if (f.optimizer_failed) continue;
    if (!any || f.residual < report.minimum_residual - kArgminTieTolerance) {
      report.minimum_residual = f.residual;
      report.argmin_focus = f.focus;
      any = true;
    } else if (f.residual < report.minimum_residual) {
      // Within the tie window: keep the lower index but the exact minimum value.
      report.minimum_residual = f.residual;
    }
  }
  if (!any) fail(ErrorKind::numerical, "every focus of the residual contangle failed");
  return report;
}

nlohmann::json GaussianMonogamyReport::to_json() const {
  nlohmann::json foci_json = nlohmann::json::array();
  for (const FocusResidual& f : foci) {
    nlohmann::json pairwise = nlohmann::json::object();
    for (const auto& [j, v] : f.pairwise) pairwise[std::to_string(j)] = v;
    foci_json.push_back({{"focus", f.focus},
                         {"one_vs_rest", f.one_vs_rest},
                         {"one_vs_rest_method", to_string(f.one_vs_rest_method)},
                         {"pairwise", pairwise},
                         {"residual", f.residual},
                         {"optimizer_failed", f.optimizer_failed}});
  }
  return {{"foci", foci_json},
          {"minimum_residual", minimum_residual},
          {"argmin_focus", argmin_focus},
          {"pure", pure}};
}

std::vector<PromiscuityRow> promiscuity_sweep(std::span<const double> r_grid,
                                              const RoofOptions& options) {
  std::vector<PromiscuityRow> rows;
  rows.reserve(r_grid.size());
  for (double r : r_grid) {
    if (!(r >= 0.0)) fail(ErrorKind::domain, "sweep squeezing values must be >= 0");
    const GaussianMonogamyReport report = residual_gaussian_contangle(ghzw_three_mode(r), options);
    PromiscuityRow row;
    row.r = r;
    row.pairwise_gtau = report.foci[0].pairwise.at(1);
    row.one_vs_rest_etau = report.foci[0].one_vs_rest;
    row.min_residual = report.minimum_residual;
    row.argmin_focus = report.argmin_focus;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace monogamy
