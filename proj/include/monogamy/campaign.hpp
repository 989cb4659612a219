#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "monogamy/gaussian_monogamy.hpp"
#include "monogamy/qubit_core.hpp"

namespace monogamy {

enum class CampaignSystem { qubits, gaussian };

CampaignSystem parse_campaign_system(const std::string& name);
std::string to_string(CampaignSystem system);

struct CampaignConfig {
  CampaignSystem system = CampaignSystem::qubits;
  int n_parties = 3;
  int trials = 1;
  std::uint64_t seed = 0;
  /// Trial indices run are first_trial .. first_trial + trials - 1, so any
  /// single trial of a long campaign can be replayed on its own.
  std::uint64_t first_trial = 0;
  double tolerance = 1e-9;
  double r_max = 1.0;
  /// Largest symplectic eigenvalue of mixed Gaussian samples; n_max <= 1
  /// samples pure states.
  double n_max = 1.0;
  std::string output_path;
  std::string trials_csv_path;
  /// 0 uses the hardware concurrency, capped by MONOGAMY_LAB_THREADS.
  int threads = 0;

  void validate() const;
  nlohmann::json to_json() const;
};

struct TrialRecord {
  std::uint64_t index = 0;
  /// Minimum residual over foci; NaN when every focus failed.
  double residual = 0.0;
  int argmin_focus = 0;
  bool violation = false;
  bool optimizer_failed = false;
};

struct CampaignSummary {
  int trials_run = 0;
  int violations = 0;
  int optimizer_failures = 0;
  double worst_residual = 0.0;
  double mean_residual = 0.0;
  double elapsed_seconds = 0.0;

  /// Wall time is left out so that repeated runs give identical documents.
  nlohmann::json to_json() const;
};

struct CampaignResult {
  CampaignSummary summary;
  std::vector<TrialRecord> trials;
};

/// Monogamy residual of a pure qubit state, minimized over every focus.
TrialRecord evaluate_qubit_state(const QubitPureState& psi, double tolerance);

/// Residual Gaussian contangle of a three-mode state, minimized over foci.
TrialRecord evaluate_gaussian_state(const CovarianceMatrix& cm, double tolerance,
                                    const RoofOptions& options);

/// Trial `index` draws every random number from streams derived from
/// (config.seed, index).
TrialRecord run_trial(const CampaignConfig& config, std::uint64_t index);

CampaignSummary summarize(std::span<const TrialRecord> trials);

CampaignResult run_campaign(const CampaignConfig& config);

/// Worker count from `requested` (0 = hardware) and MONOGAMY_LAB_THREADS.
int resolve_threads(int requested);

std::string trials_csv(std::span<const TrialRecord> trials);
std::string sweep_csv(std::span<const PromiscuityRow> rows);

}  // namespace monogamy
