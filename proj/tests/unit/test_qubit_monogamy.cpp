#include "doctest.h"

#include <cmath>

#include "monogamy/error.hpp"
#include "monogamy/qubit_monogamy.hpp"
#include "monogamy/random.hpp"
#include "oracles.hpp"

using namespace monogamy;
using cd = std::complex<double>;

namespace {

DensityMatrix pair_of(const QubitPureState& psi, int a, int b) {
  return reduced_state(psi, QubitPartition(psi.n_qubits(), {a, b}));
}

DensityMatrix random_rank2(Rng& rng) {
  const Eigen::MatrixXcd g = complex_ginibre(4, 2, rng);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(2, 0.5 * (rho + rho.adjoint()));
}

QubitPureState product3(Rng& rng) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
  for (int k = 0; k < 3; ++k) {
    const Eigen::VectorXcd q = QubitPureState::haar_random(1, rng).amplitudes();
    Eigen::VectorXcd next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * q(0);
      next(2 * i + 1) = v(i) * q(1);
    }
    v = next;
  }
  return QubitPureState::normalized(3, v);
}

}  // namespace

TEST_CASE("concurrence examples") {
  CHECK(concurrence(to_density_matrix(bell_state())) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concurrence(to_density_matrix(QubitPureState::basis(2, 0))) == doctest::Approx(0.0));
  const DensityMatrix w_ab = pair_of(w_state(3), 0, 1);
  CHECK(oracle::concurrence(w_ab.matrix()) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(concurrence(w_ab) - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(tangle_two_qubit(w_ab) - 4.0 / 9.0) < 1e-12);
  CHECK(tangle_two_qubit(to_density_matrix(bell_state())) == doctest::Approx(1.0));
}

TEST_CASE("concurrence matches the brute-force eigenvalue oracle") {
  Rng rng = make_rng(11, 0);
  for (int t = 0; t < 300; ++t) {
    const int rank = 1 + t % 4;
    const Eigen::MatrixXcd g = complex_ginibre(4, rank, rng);
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace();
    const DensityMatrix d(2, 0.5 * (rho + rho.adjoint()));
    const double c = concurrence(d);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    // The oracle takes square roots of noisy eigenvalues; its own error on
    // rank-deficient inputs is about 1e-8.
    CHECK(std::abs(c - oracle::concurrence(d.matrix())) < (rank == 4 ? 1e-10 : 1e-7));
  }
}

TEST_CASE("concurrence needs two qubits") {
  CHECK_THROWS_AS(concurrence(to_density_matrix(ghz_state(3))), Error);
}

TEST_CASE("entanglement of formation") {
  CHECK(entanglement_of_formation(to_density_matrix(bell_state())) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eof_from_concurrence(0.0) == 0.0);
  CHECK(eof_from_concurrence(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  const double x = (1.0 + std::sqrt(5.0) / 3.0) / 2.0;
  const double h = -x * std::log2(x) - (1 - x) * std::log2(1 - x);
  CHECK(eof_from_concurrence(2.0 / 3.0) == doctest::Approx(h).epsilon(1e-14));
  CHECK(h == doctest::Approx(0.550048).epsilon(1e-6));
  double prev = -1.0;
  for (int k = 0; k <= 1000; ++k) {
    const double e = eof_from_concurrence(k / 1000.0);
    CHECK(e >= prev);
    CHECK(e >= 0.0);
    CHECK(e <= 1.0 + 1e-15);
    prev = e;
  }
}

TEST_CASE("negativity") {
  const int b[] = {1};
  CHECK(negativity(to_density_matrix(bell_state()), b) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(negativity(to_density_matrix(QubitPureState::basis(2, 2)), b) == doctest::Approx(0.0));
  Rng rng = make_rng(12, 0);
  for (int t = 0; t < 100; ++t) {
    const auto psi = QubitPureState::haar_random(2, rng);
    const DensityMatrix rho = to_density_matrix(psi);
    const double c = concurrence(rho);
    const double n = negativity(rho, b);
    CHECK(std::abs(n - c / 2.0) < 1e-10);
    const double tau = pure_tangle_one_vs_rest(psi, 0);
    const DensityMatrix a = reduced_state(psi, QubitPartition(2, {0}));
    CHECK(std::abs(tau - 4.0 * a.matrix().determinant().real()) < 1e-10);
    CHECK(std::abs(tau - 4.0 * n * n) < 1e-10);
    CHECK(std::abs(tau - tangle_two_qubit(rho)) < 1e-10);
  }
}

TEST_CASE("one-vs-rest tangle") {
  CHECK(pure_tangle_one_vs_rest(bell_state(), 0) == doctest::Approx(1.0));
  CHECK(pure_tangle_one_vs_rest(QubitPureState::basis(3, 0), 0) == doctest::Approx(0.0));
  CHECK(pure_tangle_one_vs_rest(ghz_state(3), 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(pure_tangle_one_vs_rest(ghz_state(3), 3), Error);
}

TEST_CASE("three-way tangle examples") {
  const auto ghz = residual_tangle_three_qubits(ghz_state(3), 0);
  CHECK(std::abs(ghz.residual - 1.0) < 1e-12);
  for (const auto& [k, v] : ghz.pairwise) CHECK(std::abs(v) < 1e-12);

  const auto w = residual_tangle_three_qubits(w_state(3), 0);
  CHECK(std::abs(w.residual) < 1e-9);
  CHECK(std::abs(w.one_vs_rest - 8.0 / 9.0) < 1e-12);
  CHECK(w.pairwise.size() == 2);
  for (const auto& [k, v] : w.pairwise) CHECK(std::abs(v - 4.0 / 9.0) < 1e-9);

  // |0> (x) Bell on BC.
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  const auto sep = residual_tangle_three_qubits(QubitPureState(3, v), 0);
  CHECK(std::abs(sep.residual) < 1e-12);
  CHECK(std::abs(sep.one_vs_rest) < 1e-12);
  for (const auto& [k, t] : sep.pairwise) CHECK(std::abs(t) < 1e-12);
}

TEST_CASE("ckw check on four qubits") {
  for (int focus = 0; focus < 4; ++focus) {
    const MonogamyReport g = ckw_check(ghz_state(4), focus);
    CHECK(g.holds);
    CHECK(std::abs(g.decomposition.residual - 1.0) < 1e-12);
    const MonogamyReport w = ckw_check(w_state(4), focus);
    CHECK(w.holds);
    CHECK(std::abs(w.decomposition.one_vs_rest - 0.75) < 1e-12);
    CHECK(w.decomposition.pairwise.size() == 3);
    for (const auto& [k, t] : w.decomposition.pairwise) CHECK(std::abs(t - 0.25) < 1e-9);
    CHECK(std::abs(w.decomposition.residual) < 1e-9);
  }
  Rng rng = make_rng(13, 0);
  const MonogamyReport p = ckw_check(product3(rng), 1);
  CHECK(p.holds);
  CHECK(std::abs(p.decomposition.residual) < 1e-12);
  CHECK(std::abs(p.decomposition.one_vs_rest) < 1e-12);

  CHECK_THROWS_AS(ckw_check(bell_state(), 0), Error);
  CHECK_THROWS_AS(ckw_check(ghz_state(3), 0, 0.0), Error);
}

TEST_CASE("report bookkeeping and JSON") {
  Rng rng = make_rng(14, 0);
  const auto psi = QubitPureState::haar_random(5, rng);
  const MonogamyReport r = ckw_check(psi, 2);
  double sum = 0.0;
  for (const auto& [k, t] : r.decomposition.pairwise) {
    CHECK(t >= -1e-10);
    CHECK(t <= 1.0);
    sum += t;
  }
  CHECK(std::abs(r.decomposition.residual - (r.decomposition.one_vs_rest - sum)) < 1e-12);
  const auto j = r.to_json();
  for (const char* key : {"focus", "one_vs_rest", "pairwise", "residual", "holds", "tolerance"})
    CHECK(j.contains(key));
  CHECK(j["pairwise"].size() == 4);
}

TEST_CASE("monogamy and focus independence on random states") {
  Rng rng = make_rng(15, 0);
  for (int t = 0; t < 2000; ++t) {
    const auto psi = QubitPureState::haar_random(3, rng);
    double lo = 1e9, hi = -1e9;
    for (int f = 0; f < 3; ++f) {
      const double r = residual_tangle_three_qubits(psi, f).residual;
      CHECK(r >= -1e-9);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    CHECK(hi - lo < 1e-9);
  }
  for (int t = 0; t < 200; ++t) {
    const auto psi = QubitPureState::haar_random(4 + t % 3, rng);
    CHECK(ckw_check(psi, t % 4).decomposition.residual >= -1e-9);
  }
}

TEST_CASE("closed-form tangle equals the convex roof on rank-2 states") {
  // p Bell + (1 - p) |01><01| at p = 1/2.
  Eigen::MatrixXcd rho = 0.5 * to_density_matrix(bell_state()).matrix();
  rho(1, 1) += 0.5;
  const DensityMatrix mix(2, rho);
  const double roof = oracle::roof_tangle_rank2(mix.matrix(), 20, 7);
  CHECK(std::abs(tangle_two_qubit(mix) - roof) < 1e-4);

  Rng rng = make_rng(16, 0);
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix d = random_rank2(rng);
    CHECK(std::abs(tangle_two_qubit(d) - oracle::roof_tangle_rank2(d.matrix(), 20, 100 + t)) <
          1e-4);
  }
}
