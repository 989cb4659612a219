// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <unistd.h>

#include "monogamy/campaign.hpp"
#include "monogamy/gaussian_monogamy.hpp"
#include "monogamy/qubit_monogamy.hpp"
#include "monogamy/random.hpp"
#include "oracles.hpp"

using namespace monogamy;
namespace fs = std::filesystem;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, bool ok, const std::string& what, const std::string& detail, double secs) {
  if (!ok) ++failures;
  std::printf("%s  %2d  %-34s %s (%.3f s)\n", ok ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

void residual_tangle_case(int id, const QubitPureState& psi, double want, double want_pair,
                          double tol, const std::string& name) {
  residual_tangle_three_qubits(psi, 0);  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  const TangleDecomposition d = residual_tangle_three_qubits(psi, 0);
  const double secs = seconds_since(t0);
  double pair_err = 0.0;
  for (const auto& [k, v] : d.pairwise) pair_err = std::max(pair_err, std::abs(v - want_pair));
  const double err = std::abs(d.residual - want);
  report(id, err < tol && pair_err < tol && secs < 1e-3, name,
         fmt("residual err %.2e, pairwise err %.2e", err, pair_err), secs);
}

void criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  CampaignConfig c;
  c.seed = 42;
  c.trials = 100000;
  c.n_parties = 3;
  const CampaignSummary three = run_campaign(c).summary;
  c.trials = 10000;
  c.n_parties = 4;
  const CampaignSummary four = run_campaign(c).summary;
  const double secs = seconds_since(t0);
  const double worst = std::min(three.worst_residual, four.worst_residual);
  report(3, three.violations == 0 && four.violations == 0 && worst >= -1e-9 && secs < 60,
         "qubit monogamy campaign",
         fmt("1e5 x 3q + 1e4 x 4q, violations %.0f, worst %.2e",
             three.violations + four.violations, worst),
         secs);
}

void criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng = make_rng(2024, 0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::MatrixXcd g = complex_ginibre(4, 2, rng);
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace();
    const DensityMatrix d(2, 0.5 * (rho + rho.adjoint()));
    const double roof = oracle::roof_tangle_rank2(d.matrix(), 20, 1000 + t);
    worst = std::max(worst, std::abs(tangle_two_qubit(d) - roof));
  }
  const double secs = seconds_since(t0);
  report(4, worst < 1e-4 && secs < 120, "closed form vs convex roof",
         fmt("100 rank-2 states, max |diff| %.2e", worst), secs);
}

void criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng = make_rng(5, 0);
  double spread = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const auto psi = QubitPureState::haar_random(3, rng);
    double lo = 1e9, hi = -1e9;
    for (int f = 0; f < 3; ++f) {
      const double r = residual_tangle_three_qubits(psi, f).residual;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    spread = std::max(spread, hi - lo);
  }
  report(5, spread < 1e-9, "focus permutation invariance",
         fmt("1e4 states, max spread %.2e", spread), seconds_since(t0));
}

void criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double r : {0.1, 0.5, 1.0, 1.5}) {
    const double want = 2 * r / std::log(2.0);
    const CovarianceMatrix tms = two_mode_squeezed(r);
    worst = std::max(worst, std::abs(log_negativity(tms, 0) - want));
    // the independent spectrum route must agree with the same target
    worst = std::max(worst, std::abs(oracle::log_negativity_two_mode(tms.sigma()) - want));
  }
  report(6, worst < 1e-9, "TMS log-negativity", fmt("max err %.2e", worst), seconds_since(t0));
}

void criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const CovarianceMatrix cm = random_pure_cm(2 + k % 2, 1.5, 7000 + k);
    for (int m = 0; m < cm.n_modes(); ++m) {
      const double en = log_negativity(cm, m);
      worst = std::max(worst, std::abs(contangle_pure(cm, m).value - en * en));
    }
  }
  report(7, worst < 1e-8, "pure contangle = E_N^2", fmt("100 states, max err %.2e", worst),
         seconds_since(t0));
}

void criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  double pure_err = 0.0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const CovarianceMatrix cm = random_pure_cm(2, 1.5, 8000 + k);
    RoofOptions o;
    o.seed = k;
    pure_err = std::max(pure_err,
                        std::abs(gaussian_contangle(cm, o).value - contangle_pure(cm, 0).value));
  }
  Rng rng = make_rng(8, 0);
  std::uniform_real_distribution<double> occ(1.0, 3.0), sq(0.0, 1.0), ang(0.0, M_PI);
  double sep_max = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double n[] = {occ(rng), occ(rng)};
    const SymplecticOp local = squeezer(2, 0, sq(rng)) * phase_rotation(2, 0, ang(rng)) *
                               squeezer(2, 1, sq(rng)) * phase_rotation(2, 1, ang(rng));
    RoofOptions o;
    o.seed = 100 + k;
    sep_max = std::max(sep_max, gaussian_contangle(local.apply(thermal(n)), o).value);
  }
  const double secs = seconds_since(t0);
  report(8, pure_err < 1e-6 && sep_max <= 1e-7 && secs < 300, "Gaussian roof optimizer",
         fmt("pure max err %.2e, separable max %.2e", pure_err, sep_max), secs);
}

void criterion9() {
  const auto t0 = std::chrono::steady_clock::now();
  CampaignConfig c;
  c.system = CampaignSystem::gaussian;
  c.tolerance = kDefaultGaussianTolerance;
  c.seed = 7;
  c.trials = 500;
  c.r_max = 1.0;
  const CampaignSummary pure = run_campaign(c).summary;
  c.seed = 8;
  c.trials = 200;
  c.n_max = 3.0;
  const CampaignSummary mixed = run_campaign(c).summary;
  const double secs = seconds_since(t0);
  const double worst = std::min(pure.worst_residual, mixed.worst_residual);
  const int failed = pure.optimizer_failures + mixed.optimizer_failures;
  report(9, worst >= -1e-7 && failed == 0 && secs < 1800, "Gaussian monogamy campaign",
         fmt("500 pure + 200 mixed, worst %.2e, optimizer failures %.0f", worst, failed), secs);
}

void criterion10() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> grid;
  for (int k = 1; k <= 16; ++k) grid.push_back(1.5 * k / 16);
  double min_pair = 1e9, min_res = 1e9;
  for (const PromiscuityRow& row : promiscuity_sweep(grid)) {
    min_pair = std::min(min_pair, row.pairwise_gtau);
    min_res = std::min(min_res, row.min_residual);
  }
  report(10, min_pair > 0 && min_res > 0, "GHZ/W promiscuity",
         fmt("16 points, min pairwise %.3e, min residual %.3e", min_pair, min_res),
         seconds_since(t0));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool run_verify(const std::string& args, const fs::path& dir, const std::string& tag,
                std::string& bundle) {
  const std::string cmd = std::string(MONOGAMY_LAB) + " verify " + args + " --out " +
                          (dir / (tag + ".json")).string() + " --csv " +
                          (dir / (tag + ".csv")).string() + " > " +
                          (dir / (tag + ".stdout")).string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return false;
  bundle = slurp(dir / (tag + ".stdout")) + slurp(dir / (tag + ".json")) +
           slurp(dir / (tag + ".csv"));
  return true;
}

void criterion11() {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path dir = fs::temp_directory_path() / ("monogamy_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  bool ok = true;
  std::size_t bytes = 0;
  const char* configs[] = {"--system qubits --n-parties 4 --trials 5000 --seed 42",
                           "--system gaussian --trials 6 --seed 7 --n-max 2"};
  int k = 0;
  for (const char* args : configs) {
    std::string a, b;
    const std::string tag = "run" + std::to_string(k++);
    ok = ok && run_verify(args, dir, tag + "a", a) && run_verify(args, dir, tag + "b", b) && a == b;
    bytes += a.size();
  }
  fs::remove_all(dir);
  report(11, ok, "byte-identical verify runs", fmt("%.0f bytes compared per run pair", bytes),
         seconds_since(t0));
}

}  // namespace

int main() {
  residual_tangle_case(1, ghz_state(3), 1.0, 0.0, 1e-12, "GHZ residual tangle");
  residual_tangle_case(2, w_state(3), 0.0, 4.0 / 9.0, 1e-9, "W residual tangle");
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
