#include "doctest.h"

#include <cmath>

#include "monogamy/error.hpp"
#include "monogamy/qubit_core.hpp"
#include "monogamy/random.hpp"

using namespace monogamy;
using cd = std::complex<double>;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::numerical;
}

DensityMatrix diag2(double a, double b) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return DensityMatrix(1, m);
}

// Mixed state from a random Ginibre matrix, rank 2^n.
DensityMatrix random_density(int n, Rng& rng) {
  const Eigen::MatrixXcd g = complex_ginibre(1 << n, 1 << n, rng);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(n, 0.5 * (rho + rho.adjoint()));
}

}  // namespace

TEST_CASE("pure state validation") {
  CHECK(kind_of([] { QubitPureState(2, Eigen::VectorXcd::Ones(3)); }) == ErrorKind::dimension);
  CHECK(kind_of([] { QubitPureState(1, Eigen::VectorXcd::Ones(2)); }) == ErrorKind::state);
  CHECK(kind_of([] { QubitPureState::normalized(1, Eigen::VectorXcd::Zero(2)); }) ==
        ErrorKind::state);
  CHECK(kind_of([] { QubitPureState::basis(2, 4); }) == ErrorKind::dimension);
  const auto psi = QubitPureState::normalized(1, Eigen::VectorXcd::Ones(2));
  CHECK(psi.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("density matrix validation") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = cd(0.0, 0.1);
  CHECK(kind_of([&] { DensityMatrix(1, m); }) == ErrorKind::state);  // not Hermitian
  CHECK(kind_of([] { DensityMatrix(1, Eigen::MatrixXcd::Identity(2, 2)); }) == ErrorKind::state);
  Eigen::MatrixXcd neg = Eigen::MatrixXcd::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK(kind_of([&] { DensityMatrix(1, neg); }) == ErrorKind::state);
  CHECK(kind_of([] { DensityMatrix(2, Eigen::MatrixXcd::Identity(2, 2) / 2.0); }) ==
        ErrorKind::dimension);
}

TEST_CASE("projectors") {
  const DensityMatrix zero = to_density_matrix(QubitPureState::basis(1, 0));
  CHECK(std::abs(zero.matrix()(0, 0) - 1.0) < 1e-15);
  CHECK(zero.matrix().cwiseAbs().sum() == doctest::Approx(1.0));

  const DensityMatrix bell = to_density_matrix(bell_state());
  for (int i : {0, 3})
    for (int j : {0, 3}) CHECK(std::abs(bell.matrix()(i, j) - 0.5) < 1e-15);
  CHECK(bell.matrix().cwiseAbs().sum() == doctest::Approx(2.0));

  Rng rng = make_rng(1, 0);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = to_density_matrix(QubitPureState::haar_random(3, rng));
    CHECK(std::abs((rho.matrix() * rho.matrix()).trace().real() - 1.0) < 1e-12);
  }
}

TEST_CASE("big-endian ordering") {
  // |01>: qubit 0 is 0, qubit 1 is 1, basis index 1.
  const auto psi = QubitPureState::basis(2, 1);
  const DensityMatrix a = reduced_state(psi, QubitPartition(2, {0}));
  const DensityMatrix b = reduced_state(psi, QubitPartition(2, {1}));
  CHECK(std::abs(a.matrix()(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(b.matrix()(1, 1) - 1.0) < 1e-15);
}

TEST_CASE("partial trace examples") {
  const DensityMatrix a = partial_trace(to_density_matrix(bell_state()), QubitPartition(2, {0}));
  CHECK((a.matrix() - Eigen::MatrixXcd::Identity(2, 2) / 2.0).norm() < 1e-15);

  const DensityMatrix ab =
      partial_trace(to_density_matrix(QubitPureState::basis(3, 0)), QubitPartition(3, {0, 1}));
  CHECK(std::abs(ab.matrix()(0, 0) - 1.0) < 1e-15);
  CHECK(ab.matrix().cwiseAbs().sum() == doctest::Approx(1.0));

  // Tr_C W = (|00><00| + 2 |Psi+><Psi+|) / 3.
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(0, 0) = 1.0 / 3.0;
  for (int i : {1, 2})
    for (int j : {1, 2}) expected(i, j) = 1.0 / 3.0;
  const DensityMatrix w_ab = partial_trace(to_density_matrix(w_state(3)), QubitPartition(3, {0, 1}));
  CHECK((w_ab.matrix() - expected).norm() < 1e-14);
  const DensityMatrix w_ab2 = reduced_state(w_state(3), QubitPartition(3, {0, 1}));
  CHECK((w_ab2.matrix() - expected).norm() < 1e-14);
}

TEST_CASE("partial trace keeps validity and agrees with the pure-state route") {
  Rng rng = make_rng(2, 0);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 4;
    const auto psi = QubitPureState::haar_random(n, rng);
    std::vector<int> kept;
    for (int k = 0; k < n; ++k)
      if ((t >> k) & 1 || k == 0) kept.push_back(k);
    if (static_cast<int>(kept.size()) == n) kept.pop_back();
    const QubitPartition part(n, kept);
    const DensityMatrix r1 = partial_trace(to_density_matrix(psi), part);
    const DensityMatrix r2 = reduced_state(psi, part);
    CHECK(std::abs(r1.matrix().trace().real() - 1.0) < 1e-12);
    CHECK(r1.eigenvalues().minCoeff() >= -1e-10);
    CHECK((r1.matrix() - r2.matrix()).norm() < 1e-12);
  }
}

TEST_CASE("partition errors") {
  CHECK(kind_of([] { QubitPartition(3, {}); }) == ErrorKind::dimension);
  CHECK(kind_of([] { QubitPartition(3, {0, 0}); }) == ErrorKind::dimension);
  CHECK(kind_of([] { QubitPartition(3, {3}); }) == ErrorKind::dimension);
  CHECK(kind_of([] {
          partial_trace(to_density_matrix(bell_state()), QubitPartition(3, {0}));
        }) == ErrorKind::dimension);
  const QubitPartition p(4, {2, 0});
  CHECK(p.kept() == std::vector<int>{0, 2});
  CHECK(p.traced() == std::vector<int>{1, 3});
}

TEST_CASE("partial transpose") {
  const DensityMatrix bell = to_density_matrix(bell_state());
  const int b[] = {1};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(partial_transpose(bell, b));
  CHECK(es.eigenvalues()(0) == doctest::Approx(-0.5).epsilon(1e-14));
  for (int i = 1; i < 4; ++i) CHECK(es.eigenvalues()(i) == doctest::Approx(0.5).epsilon(1e-14));

  const DensityMatrix zero = to_density_matrix(QubitPureState::basis(2, 0));
  const int a[] = {0};
  CHECK((partial_transpose(zero, a) - zero.matrix()).norm() == 0.0);

  const int none[] = {0, 1};
  CHECK(kind_of([&] { partial_transpose(bell, none); }) == ErrorKind::dimension);
  const int bad[] = {2};
  CHECK(kind_of([&] { partial_transpose(bell, bad); }) == ErrorKind::dimension);

  Rng rng = make_rng(3, 0);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 2;
    const DensityMatrix rho = random_density(n, rng);
    const int sub[] = {t % n};
    const Eigen::MatrixXcd pt = partial_transpose(rho, sub);
    CHECK(std::abs(pt.trace() - cd(1.0)) < 1e-12);
    CHECK((pt - pt.adjoint()).norm() < 1e-14);
  }
}

TEST_CASE("partial transpose is an involution") {
  Rng rng = make_rng(4, 0);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 2;
    const DensityMatrix rho = random_density(n, rng);
    const int sub[] = {t % n};
    const Eigen::MatrixXcd twice = partial_transpose(partial_transpose(rho, sub), n, sub);
    CHECK((twice - rho.matrix()).norm() == 0.0);
  }
}

TEST_CASE("entropies") {
  CHECK(von_neumann_entropy(to_density_matrix(bell_state())) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(diag2(0.5, 0.5)) == doctest::Approx(1.0).epsilon(1e-14));
  const double h34 = -(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25));
  CHECK(von_neumann_entropy(diag2(0.75, 0.25)) == doctest::Approx(h34).epsilon(1e-14));
  CHECK(h34 == doctest::Approx(0.811278).epsilon(1e-6));

  CHECK(linear_entropy(to_density_matrix(ghz_state(3))) == doctest::Approx(0.0));
  CHECK(linear_entropy(diag2(0.5, 0.5)) == doctest::Approx(0.5));
  CHECK(linear_entropy(diag2(0.75, 0.25)) == doctest::Approx(0.375));

  Rng rng = make_rng(5, 0);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 4;
    const auto psi = QubitPureState::haar_random(n, rng);
    const int cut = 1 + t % (n - 1);
    std::vector<int> left, right;
    for (int k = 0; k < n; ++k) (k < cut ? left : right).push_back(k);
    const double s1 = von_neumann_entropy(reduced_state(psi, QubitPartition(n, left)));
    const double s2 = von_neumann_entropy(reduced_state(psi, QubitPartition(n, right)));
    CHECK(std::abs(s1 - s2) < 1e-10);
    const DensityMatrix rho = random_density(1 + t % 3, rng);
    const double lin = linear_entropy(rho);
    CHECK(lin >= 0.0);
    CHECK(lin <= 1.0 - std::pow(0.5, rho.n_qubits()) + 1e-15);
    CHECK(von_neumann_entropy(rho) <= rho.n_qubits() + 1e-12);
  }
}

TEST_CASE("canonical states") {
  const auto ghz = ghz_state(4);
  CHECK(std::abs(ghz.amplitudes()(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(ghz.amplitudes()(15) - 1.0 / std::sqrt(2.0)) < 1e-15);
  const auto w = w_state(3);
  for (int i : {1, 2, 4}) CHECK(std::abs(w.amplitudes()(i) - 1.0 / std::sqrt(3.0)) < 1e-15);
}
