#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "monogamy/random.hpp"

namespace monogamy {

inline constexpr int kMaxModes = 10;
inline constexpr double kPhysicalTolerance = 1e-9;

/// Second-moment matrix of an N-mode Gaussian state, quadratures ordered
/// mode-major (x1, p1, x2, p2, ...), vacuum = identity.
///
/// Construction checks shape and symmetry only. Physicality (sigma + i Omega >= 0)
/// is tested by is_physical() and enforced by the measures that need it, so
/// that unphysical matrices can still be inspected.
class CovarianceMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  explicit CovarianceMatrix(Eigen::MatrixXd sigma);

  static CovarianceMatrix vacuum(int n_modes);

  int n_modes() const noexcept { return static_cast<int>(sigma_.rows() / 2); }
  const Eigen::MatrixXd& sigma() const noexcept { return sigma_; }
  /// 2x2 block coupling modes i and j.
  Eigen::Matrix2d block(int i, int j) const;

 private:
  Eigen::MatrixXd sigma_;
};

/// Symplectic eigenvalues, ascending.
struct SymplecticSpectrum {
  std::vector<double> values;

  double min() const { return values.front(); }
  double product() const;
};

/// Real 2N x 2N matrix preserving the symplectic form: S^T Omega S = Omega.
/// Acts on covariance matrices by congruence, sigma -> S^T sigma S, so a
/// quadrature map X -> M X is stored as S = M^T.
class SymplecticOp {
 public:
  static constexpr double kTolerance = 1e-10;

  explicit SymplecticOp(Eigen::MatrixXd s);
  static SymplecticOp identity(int n_modes);

  int n_modes() const noexcept { return static_cast<int>(s_.rows() / 2); }
  const Eigen::MatrixXd& matrix() const noexcept { return s_; }

  /// Congruence S^T sigma S.
  Eigen::MatrixXd congruence(const Eigen::MatrixXd& sigma) const;
  CovarianceMatrix apply(const CovarianceMatrix& cm) const;

  SymplecticOp operator*(const SymplecticOp& other) const;

 private:
  Eigen::MatrixXd s_;
};

/// Omega = direct sum of omega = [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int n_modes);

/// Moduli of the eigenvalues of Omega sigma, which come in pairs +/- i n_k.
/// Accepts any symmetric positive definite even-sized matrix, including
/// partially transposed covariance matrices.
SymplecticSpectrum symplectic_spectrum(const Eigen::MatrixXd& sigma);
SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& cm);

/// Second route: square roots of the (doubly degenerate) eigenvalues of
/// sigma^{1/2} Omega^T sigma Omega sigma^{1/2}.
SymplecticSpectrum symplectic_spectrum_gram(const Eigen::MatrixXd& sigma);

/// sigma = S^T diag(n1, n1, n2, n2, ...) S.
struct WilliamsonForm {
  Eigen::VectorXd nu;  // per-mode symplectic eigenvalues, in the order used by s
  SymplecticOp s;
};

WilliamsonForm williamson(const CovarianceMatrix& cm);

bool is_physical(const CovarianceMatrix& cm, double tolerance = kPhysicalTolerance);

/// Throws ErrorKind::state if the matrix violates the uncertainty relation.
void require_physical(const CovarianceMatrix& cm);

/// Tr rho^2 = 1 / sqrt(det sigma).
double purity(const CovarianceMatrix& cm);

/// Principal submatrix on the listed modes, in the listed order.
CovarianceMatrix reduced_cm(const CovarianceMatrix& cm, std::span<const int> modes);

/// Mirror reflection p -> -p of one mode: P sigma P.
Eigen::MatrixXd partial_transpose_cm(const CovarianceMatrix& cm, int mode);

// Constructors and elementary symplectic operations.

CovarianceMatrix thermal(std::span<const double> occupations);
CovarianceMatrix two_mode_squeezed(double r);
/// Direct sum of two states on disjoint modes.
CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b);

/// Single-mode squeezer diag(e^{-r}, e^{r}) acting on `mode`.
SymplecticOp squeezer(int n_modes, int mode, double r);
/// Phase rotation by angle theta on `mode`.
SymplecticOp phase_rotation(int n_modes, int mode, double theta);
/// Beam splitter x_i' = cos t x_i - sin t x_j, x_j' = sin t x_i + cos t x_j (same for p).
SymplecticOp beam_splitter(int n_modes, int i, int j, double theta);
/// Orthogonal symplectic image of an N x N unitary.
SymplecticOp passive(const Eigen::MatrixXcd& unitary);

/// Fully symmetric pure three-mode state: one momentum-squeezed and two
/// position-squeezed vacua (squeezing r) sent through a tritter.
CovarianceMatrix ghzw_three_mode(double r);

/// Random pure state sigma = S^T S with S = K1 Z K2, K_i Haar-passive and
/// squeezings uniform on [0, r_max].
CovarianceMatrix random_pure_cm(int n_modes, double r_max, std::uint64_t seed);
/// Random mixed state S^T nu S with symplectic eigenvalues uniform on [1, n_max].
CovarianceMatrix random_mixed_cm(int n_modes, double r_max, double n_max, std::uint64_t seed);

/// Random symplectic S = K1 Z K2 drawn from `rng`.
SymplecticOp random_symplectic(int n_modes, double r_max, Rng& rng);

/// A sampled state together with the normal form it was built from.
struct PlantedState {
  Eigen::VectorXd nu;
  SymplecticOp s;
  CovarianceMatrix cm;
};

PlantedState sample_planted_state(int n_modes, double r_max, double n_max, Rng& rng);

}  // namespace monogamy
