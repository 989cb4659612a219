#include "monogamy/gaussian_core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#include "monogamy/error.hpp"

namespace monogamy {

namespace {

constexpr double kPairingTolerance = 1e-9;

void check_mode_count(int n_modes) {
  if (n_modes < 1 || n_modes > kMaxModes) {
    fail(ErrorKind::dimension, "mode count " + std::to_string(n_modes) + " outside [1, " +
                                   std::to_string(kMaxModes) + "]");
  }
}

void check_mode_index(int mode, int n_modes) {
  if (mode < 0 || mode >= n_modes) {
    fail(ErrorKind::dimension, "mode index " + std::to_string(mode) + " out of range");
  }
}

void check_even_square(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    fail(ErrorKind::dimension, "covariance matrix must be a nonempty 2N x 2N array");
  }
}

Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd sigma) : sigma_(std::move(sigma)) {
  check_even_square(sigma_);
  check_mode_count(static_cast<int>(sigma_.rows() / 2));
  if (!sigma_.allFinite()) fail(ErrorKind::state, "covariance matrix has non-finite entries");
  const double scale = std::max(1.0, sigma_.cwiseAbs().maxCoeff());
  if ((sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
    fail(ErrorKind::dimension, "covariance matrix is not symmetric");
  }
  sigma_ = (0.5 * (sigma_ + sigma_.transpose())).eval();
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
  check_mode_count(n_modes);
  return CovarianceMatrix(Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

Eigen::Matrix2d CovarianceMatrix::block(int i, int j) const {
  check_mode_index(i, n_modes());
  check_mode_index(j, n_modes());
  return sigma_.block<2, 2>(2 * i, 2 * j);
}

double SymplecticSpectrum::product() const {
  return std::accumulate(values.begin(), values.end(), 1.0, std::multiplies<>());
}

SymplecticOp::SymplecticOp(Eigen::MatrixXd s) : s_(std::move(s)) {
  check_even_square(s_);
  const Eigen::MatrixXd omega = symplectic_form(n_modes());
  const double scale = std::max(1.0, s_.cwiseAbs().maxCoeff());
  if ((s_.transpose() * omega * s_ - omega).cwiseAbs().maxCoeff() > kTolerance * scale * scale) {
    fail(ErrorKind::domain, "matrix is not symplectic");
  }
}

SymplecticOp SymplecticOp::identity(int n_modes) {
  check_mode_count(n_modes);
  return SymplecticOp(Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

Eigen::MatrixXd SymplecticOp::congruence(const Eigen::MatrixXd& sigma) const {
  if (sigma.rows() != s_.rows() || sigma.cols() != s_.cols()) {
    fail(ErrorKind::dimension, "symplectic operation and matrix sizes differ");
  }
  Eigen::MatrixXd out = s_.transpose() * sigma * s_;
  return 0.5 * (out + out.transpose());
}

CovarianceMatrix SymplecticOp::apply(const CovarianceMatrix& cm) const {
  return CovarianceMatrix(congruence(cm.sigma()));
}

SymplecticOp SymplecticOp::operator*(const SymplecticOp& other) const {
  return SymplecticOp(s_ * other.s_);
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

SymplecticSpectrum symplectic_spectrum(const Eigen::MatrixXd& sigma) {
  check_even_square(sigma);
  const int n = static_cast<int>(sigma.rows() / 2);
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > CovarianceMatrix::kSymmetryTolerance * scale) {
    fail(ErrorKind::dimension, "symplectic spectrum needs a symmetric matrix");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(symplectic_form(n) * sigma, false);
  if (es.info() != Eigen::Success) fail(ErrorKind::numerical, "eigensolver failed on Omega sigma");

  const double tol = kPairingTolerance * scale;
  std::vector<double> upper, lower;
  for (const std::complex<double>& ev : es.eigenvalues()) {
    if (std::abs(ev.real()) > tol) {
      fail(ErrorKind::numerical, "Omega sigma has an eigenvalue off the imaginary axis");
    }
    (ev.imag() > 0.0 ? upper : lower).push_back(std::abs(ev.imag()));
  }
  if (upper.size() != lower.size()) {
    fail(ErrorKind::numerical, "eigenvalues of Omega sigma are not paired");
  }
  std::sort(upper.begin(), upper.end());
  std::sort(lower.begin(), lower.end());
  SymplecticSpectrum out;
  for (std::size_t k = 0; k < upper.size(); ++k) {
    if (std::abs(upper[k] - lower[k]) > tol) {
      fail(ErrorKind::numerical, "eigenvalues of Omega sigma are not paired");
    }
    out.values.push_back(0.5 * (upper[k] + lower[k]));
  }
  return out;
}

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& cm) {
  return symplectic_spectrum(cm.sigma());
}

SymplecticSpectrum symplectic_spectrum_gram(const Eigen::MatrixXd& sigma) {
  check_even_square(sigma);
  const int n = static_cast<int>(sigma.rows() / 2);
  const Eigen::MatrixXd omega = symplectic_form(n);
  const Eigen::MatrixXd root = symmetric_sqrt(sigma);
  Eigen::MatrixXd gram = root * omega.transpose() * sigma * omega * root;
  gram = (0.5 * (gram + gram.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  SymplecticSpectrum out;
  for (int k = 0; k < n; ++k) {
    out.values.push_back(std::sqrt(std::max(0.0, 0.5 * (ev(2 * k) + ev(2 * k + 1)))));
  }
  return out;
}

WilliamsonForm williamson(const CovarianceMatrix& cm) {
  const int n = cm.n_modes();
  const Eigen::MatrixXd root = symmetric_sqrt(cm.sigma());
  const Eigen::MatrixXd a = root * symplectic_form(n) * root;  // antisymmetric

  // i*A is Hermitian with eigenvalues +/- n_k. For an eigenvector x + i y of
  // +n_k, A x = n_k y and A y = -n_k x, so (sqrt2 y, sqrt2 x) spans a block on
  // which A acts as n_k * omega.
  const Eigen::MatrixXcd ia = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ia);
  if (es.info() != Eigen::Success) fail(ErrorKind::numerical, "Williamson eigensolver failed");

  Eigen::MatrixXd o(2 * n, 2 * n);
  Eigen::VectorXd nu(n);
  for (int k = 0; k < n; ++k) {
    const Eigen::Index col = n + k;  // positive half of the ascending spectrum
    nu(k) = es.eigenvalues()(col);
    if (!(nu(k) > 0.0)) fail(ErrorKind::numerical, "covariance matrix is not positive definite");
    const Eigen::VectorXcd v = es.eigenvectors().col(col);
    o.row(2 * k) = std::sqrt(2.0) * v.imag().transpose();
    o.row(2 * k + 1) = std::sqrt(2.0) * v.real().transpose();
  }
  Eigen::VectorXd scale(2 * n);
  for (int k = 0; k < n; ++k) scale(2 * k) = scale(2 * k + 1) = 1.0 / std::sqrt(nu(k));
  const Eigen::MatrixXd s = scale.asDiagonal() * o * root;
  return {nu, SymplecticOp(s)};
}

bool is_physical(const CovarianceMatrix& cm, double tolerance) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cm.sigma(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) return false;
  try {
    return symplectic_spectrum(cm).min() >= 1.0 - tolerance;
  } catch (const Error&) {
    return false;
  }
}

void require_physical(const CovarianceMatrix& cm) {
  if (!is_physical(cm)) {
    fail(ErrorKind::state, "covariance matrix violates the uncertainty relation");
  }
}

double purity(const CovarianceMatrix& cm) {
  const double det = cm.sigma().determinant();
  if (det < 1.0 - kPhysicalTolerance) {
    fail(ErrorKind::state, "det sigma < 1: not a physical Gaussian state");
  }
  return std::min(1.0, 1.0 / std::sqrt(det));
}

CovarianceMatrix reduced_cm(const CovarianceMatrix& cm, std::span<const int> modes) {
  if (modes.empty()) fail(ErrorKind::dimension, "reduction keeps no modes");
  std::vector<int> seen(modes.begin(), modes.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    fail(ErrorKind::dimension, "reduction lists a mode twice");
  }
  const int k = static_cast<int>(modes.size());
  Eigen::MatrixXd out(2 * k, 2 * k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      out.block<2, 2>(2 * a, 2 * b) = cm.block(modes[static_cast<std::size_t>(a)],
                                                modes[static_cast<std::size_t>(b)]);
    }
  }
  return CovarianceMatrix(std::move(out));
}

Eigen::MatrixXd partial_transpose_cm(const CovarianceMatrix& cm, int mode) {
  check_mode_index(mode, cm.n_modes());
  Eigen::MatrixXd out = cm.sigma();
  const Eigen::Index p = 2 * mode + 1;
  out.row(p) *= -1.0;
  out.col(p) *= -1.0;
  return out;
}

CovarianceMatrix thermal(std::span<const double> occupations) {
  const int n = static_cast<int>(occupations.size());
  check_mode_count(n);
  Eigen::VectorXd diag(2 * n);
  for (int k = 0; k < n; ++k) diag(2 * k) = diag(2 * k + 1) = occupations[static_cast<std::size_t>(k)];
  return CovarianceMatrix(diag.asDiagonal().toDenseMatrix());
}

CovarianceMatrix two_mode_squeezed(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) fail(ErrorKind::domain, "squeezing must be >= 0");
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Eigen::Matrix4d sigma;
  sigma << c, 0, s, 0,
           0, c, 0, -s,
           s, 0, c, 0,
           0, -s, 0, c;
  return CovarianceMatrix(sigma);
}

CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b) {
  const Eigen::Index na = a.sigma().rows();
  const Eigen::Index nb = b.sigma().rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(na + nb, na + nb);
  out.topLeftCorner(na, na) = a.sigma();
  out.bottomRightCorner(nb, nb) = b.sigma();
  return CovarianceMatrix(std::move(out));
}

SymplecticOp squeezer(int n_modes, int mode, double r) {
  check_mode_count(n_modes);
  check_mode_index(mode, n_modes);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  s(2 * mode, 2 * mode) = std::exp(-r);
  s(2 * mode + 1, 2 * mode + 1) = std::exp(r);
  return SymplecticOp(std::move(s));
}

SymplecticOp phase_rotation(int n_modes, int mode, double theta) {
  check_mode_count(n_modes);
  check_mode_index(mode, n_modes);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  const double c = std::cos(theta), s = std::sin(theta);
  m.block<2, 2>(2 * mode, 2 * mode) << c, -s, s, c;
  return SymplecticOp(m.transpose());
}

SymplecticOp beam_splitter(int n_modes, int i, int j, double theta) {
  check_mode_count(n_modes);
  check_mode_index(i, n_modes);
  check_mode_index(j, n_modes);
  if (i == j) fail(ErrorKind::dimension, "beam splitter needs two distinct modes");
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  const double c = std::cos(theta), s = std::sin(theta);
  for (int q = 0; q < 2; ++q) {
    m(2 * i + q, 2 * i + q) = c;
    m(2 * i + q, 2 * j + q) = -s;
    m(2 * j + q, 2 * i + q) = s;
    m(2 * j + q, 2 * j + q) = c;
  }
  return SymplecticOp(m.transpose());
}

SymplecticOp passive(const Eigen::MatrixXcd& unitary) {
  if (unitary.rows() != unitary.cols()) fail(ErrorKind::dimension, "unitary must be square");
  const int n = static_cast<int>(unitary.rows());
  check_mode_count(n);
  // a -> U a with a = (x + i p) / sqrt2 gives x' = X x - Y p, p' = Y x + X p.
  Eigen::MatrixXd m(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double x = unitary(j, k).real();
      const double y = unitary(j, k).imag();
      m.block<2, 2>(2 * j, 2 * k) << x, -y, y, x;
    }
  }
  return SymplecticOp(m.transpose());
}

CovarianceMatrix ghzw_three_mode(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) fail(ErrorKind::domain, "squeezing must be >= 0");
  // Mode 0 squeezed in momentum, modes 1 and 2 squeezed in position.
  const SymplecticOp inputs = squeezer(3, 0, -r) * squeezer(3, 1, r) * squeezer(3, 2, r);
  const CovarianceMatrix in = inputs.apply(CovarianceMatrix::vacuum(3));
  // Tritter: B(0,1) with cos t = 1/sqrt3, then B(1,2) at pi/4. The first input
  // is spread with equal weight 1/sqrt3 over all outputs.
  const SymplecticOp first = beam_splitter(3, 0, 1, std::acos(1.0 / std::sqrt(3.0)));
  const SymplecticOp second = beam_splitter(3, 1, 2, M_PI / 4.0);
  return second.apply(first.apply(in));
}

SymplecticOp random_symplectic(int n_modes, double r_max, Rng& rng) {
  check_mode_count(n_modes);
  if (!(r_max >= 0.0) || !std::isfinite(r_max)) fail(ErrorKind::domain, "r_max must be >= 0");
  const SymplecticOp k1 = passive(haar_unitary(n_modes, rng));
  std::uniform_real_distribution<double> squeeze(0.0, r_max);
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    const double zk = r_max > 0.0 ? squeeze(rng) : 0.0;
    z(2 * k, 2 * k) = std::exp(zk);
    z(2 * k + 1, 2 * k + 1) = std::exp(-zk);
  }
  const SymplecticOp k2 = passive(haar_unitary(n_modes, rng));
  return k1 * SymplecticOp(std::move(z)) * k2;
}

PlantedState sample_planted_state(int n_modes, double r_max, double n_max, Rng& rng) {
  check_mode_count(n_modes);
  if (!(n_max >= 1.0) || !std::isfinite(n_max)) fail(ErrorKind::domain, "n_max must be >= 1");
  SymplecticOp s = random_symplectic(n_modes, r_max, rng);
  std::uniform_real_distribution<double> occupation(1.0, n_max);
  Eigen::VectorXd nu(n_modes);
  for (int k = 0; k < n_modes; ++k) nu(k) = n_max > 1.0 ? occupation(rng) : 1.0;
  Eigen::VectorXd diag(2 * n_modes);
  for (int k = 0; k < n_modes; ++k) diag(2 * k) = diag(2 * k + 1) = nu(k);
  CovarianceMatrix cm(s.congruence(diag.asDiagonal().toDenseMatrix()));
  return {std::move(nu), std::move(s), std::move(cm)};
}

CovarianceMatrix random_pure_cm(int n_modes, double r_max, std::uint64_t seed) {
  Rng rng(seed);
  return sample_planted_state(n_modes, r_max, 1.0, rng).cm;
}

CovarianceMatrix random_mixed_cm(int n_modes, double r_max, double n_max, std::uint64_t seed) {
  Rng rng(seed);
  return sample_planted_state(n_modes, r_max, n_max, rng).cm;
}

}  // namespace monogamy
