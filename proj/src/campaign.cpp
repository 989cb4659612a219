#include "monogamy/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "monogamy/error.hpp"
#include "monogamy/qubit_monogamy.hpp"
#include "monogamy/random.hpp"
#include "monogamy/state_io.hpp"

namespace monogamy {

CampaignSystem parse_campaign_system(const std::string& name) {
  if (name == "qubits") return CampaignSystem::qubits;
  if (name == "gaussian") return CampaignSystem::gaussian;
  fail(ErrorKind::parse, "unknown system '" + name + "' (expected qubits or gaussian)");
}

std::string to_string(CampaignSystem system) {
  return system == CampaignSystem::qubits ? "qubits" : "gaussian";
}

void CampaignConfig::validate() const {
  if (trials < 1) fail(ErrorKind::domain, "trials must be at least 1");
  if (!(tolerance > 0.0)) fail(ErrorKind::domain, "tolerance must be positive");
  if (n_parties < 3) fail(ErrorKind::dimension, "n_parties must be at least 3");
  if (system == CampaignSystem::qubits && n_parties > kMaxQubits) {
    fail(ErrorKind::dimension, "qubit campaigns support at most " +
                                   std::to_string(kMaxQubits) + " parties");
  }
  if (system == CampaignSystem::gaussian) {
    if (n_parties != 3) fail(ErrorKind::dimension, "Gaussian campaigns use three modes");
    if (!(r_max >= 0.0) || !std::isfinite(r_max)) fail(ErrorKind::domain, "r_max must be >= 0");
    if (!std::isfinite(n_max)) fail(ErrorKind::domain, "n_max must be finite");
  }
}

nlohmann::json CampaignConfig::to_json() const {
  nlohmann::json j = {{"system", to_string(system)},
                      {"n_parties", n_parties},
                      {"trials", trials},
                      {"seed", seed},
                      {"first_trial", first_trial},
                      {"tolerance", tolerance}};
  if (system == CampaignSystem::gaussian) {
    j["r_max"] = r_max;
    j["n_max"] = n_max;
    j["states"] = n_max > 1.0 ? "mixed" : "pure";
  }
  return j;
}

nlohmann::json CampaignSummary::to_json() const {
  return {{"trials_run", trials_run},
          {"violations", violations},
          {"optimizer_failures", optimizer_failures},
          {"worst_residual", worst_residual},
          {"mean_residual", mean_residual}};
}

TrialRecord evaluate_qubit_state(const QubitPureState& psi, double tolerance) {
  TrialRecord rec;
  rec.residual = std::numeric_limits<double>::infinity();
  for (int focus = 0; focus < psi.n_qubits(); ++focus) {
    const double r = ckw_check(psi, focus, tolerance).decomposition.residual;
    if (r < rec.residual) {
      rec.residual = r;
      rec.argmin_focus = focus;
    }
  }
  rec.violation = rec.residual < -tolerance;
  return rec;
}

TrialRecord evaluate_gaussian_state(const CovarianceMatrix& cm, double tolerance,
                                    const RoofOptions& options) {
  TrialRecord rec;
  try {
    const GaussianMonogamyReport report = residual_gaussian_contangle(cm, options);
    rec.residual = report.minimum_residual;
    rec.argmin_focus = report.argmin_focus;
    rec.optimizer_failed = std::any_of(report.foci.begin(), report.foci.end(),
                                       [](const FocusResidual& f) { return f.optimizer_failed; });
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::numerical) throw;
    rec.residual = std::numeric_limits<double>::quiet_NaN();
    rec.optimizer_failed = true;
    return rec;
  }
  rec.violation = rec.residual < -tolerance;
  return rec;
}

TrialRecord run_trial(const CampaignConfig& config, std::uint64_t index) {
  TrialRecord rec;
  if (config.system == CampaignSystem::qubits) {
    Rng rng = make_rng(config.seed, index);
    rec = evaluate_qubit_state(QubitPureState::haar_random(config.n_parties, rng),
                               config.tolerance);
  } else {
    const std::uint64_t stream = derive_seed(config.seed, index);
    const CovarianceMatrix cm =
        config.n_max > 1.0 ? random_mixed_cm(config.n_parties, config.r_max, config.n_max, stream)
                           : random_pure_cm(config.n_parties, config.r_max, stream);
    RoofOptions options;
    options.seed = derive_seed(stream, 1);
    rec = evaluate_gaussian_state(cm, config.tolerance, options);
  }
  rec.index = index;
  return rec;
}

CampaignSummary summarize(std::span<const TrialRecord> trials) {
  CampaignSummary s;
  s.trials_run = static_cast<int>(trials.size());
  double sum = 0.0;
  int counted = 0;
  s.worst_residual = std::numeric_limits<double>::infinity();
  for (const TrialRecord& t : trials) {
    if (t.violation) ++s.violations;
    if (t.optimizer_failed) ++s.optimizer_failures;
    if (std::isnan(t.residual)) continue;
    sum += t.residual;
    ++counted;
    s.worst_residual = std::min(s.worst_residual, t.residual);
  }
  if (counted == 0) {
    s.worst_residual = std::numeric_limits<double>::quiet_NaN();
    s.mean_residual = std::numeric_limits<double>::quiet_NaN();
  } else {
    s.mean_residual = sum / counted;
  }
  return s;
}

int resolve_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("MONOGAMY_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && *end == '\0' && v > 0) n = std::min<long>(n, v);
  }
  return std::max(1, n);
}

CampaignResult run_campaign(const CampaignConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  CampaignResult result;
  result.trials.resize(static_cast<std::size_t>(config.trials));
  const int workers = std::min(resolve_threads(config.threads), config.trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= result.trials.size()) return;
      try {
        result.trials[k] = run_trial(config, config.first_trial + k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(result.trials.size());
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  result.summary = summarize(result.trials);
  result.summary.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string trials_csv(std::span<const TrialRecord> trials) {
  std::string out = "trial,min_residual,argmin_focus,violation,optimizer_failed\n";
  for (const TrialRecord& t : trials) {
    out += std::to_string(t.index) + "," + format_number(t.residual) + "," +
           std::to_string(t.argmin_focus) + "," + (t.violation ? "1" : "0") + "," +
           (t.optimizer_failed ? "1" : "0") + "\n";
  }
  return out;
}

std::string sweep_csv(std::span<const PromiscuityRow> rows) {
  std::string out = "r,pairwise_gtau,one_vs_rest_etau,min_residual,argmin_focus\n";
  for (const PromiscuityRow& row : rows) {
    out += format_number(row.r) + "," + format_number(row.pairwise_gtau) + "," +
           format_number(row.one_vs_rest_etau) + "," + format_number(row.min_residual) + "," +
           std::to_string(row.argmin_focus) + "\n";
  }
  return out;
}

}  // namespace monogamy
