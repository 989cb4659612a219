// monogamy_lab: measure entanglement of stored states, run seeded monogamy
// campaigns, sweep the GHZ/W family, and write canonical states.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "monogamy/campaign.hpp"
#include "monogamy/error.hpp"
#include "monogamy/gaussian_monogamy.hpp"
#include "monogamy/qubit_monogamy.hpp"
#include "monogamy/state_io.hpp"

using namespace monogamy;
using nlohmann::json;

namespace {

struct Bipartition {
  std::vector<int> a;
  std::vector<int> b;
};

std::vector<int> parse_indices(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) fail(ErrorKind::parse, "bad index '" + item + "' in bipartition");
    out.push_back(v);
  }
  return out;
}

// "A|B" with comma separated 0-based indices; B defaults to the complement.
Bipartition parse_bipartition(const std::string& text, int n) {
  Bipartition p;
  if (text.empty()) {
    p.a = {0};
  } else {
    const auto bar = text.find('|');
    p.a = parse_indices(text.substr(0, bar));
    if (bar != std::string::npos) p.b = parse_indices(text.substr(bar + 1));
  }
  if (p.b.empty()) {
    for (int k = 0; k < n; ++k)
      if (std::find(p.a.begin(), p.a.end(), k) == p.a.end()) p.b.push_back(k);
  }
  std::set<int> seen;
  for (const auto* side : {&p.a, &p.b}) {
    if (side->empty()) fail(ErrorKind::dimension, "bipartition has an empty side");
    for (int k : *side) {
      if (k < 0 || k >= n) {
        fail(ErrorKind::dimension, "index " + std::to_string(k) + " out of range for " +
                                       std::to_string(n) + " parties");
      }
      if (!seen.insert(k).second) {
        fail(ErrorKind::dimension, "index " + std::to_string(k) + " appears twice");
      }
    }
  }
  std::sort(p.a.begin(), p.a.end());
  std::sort(p.b.begin(), p.b.end());
  return p;
}

std::vector<int> joined(const Bipartition& p) {
  std::vector<int> all = p.a;
  all.insert(all.end(), p.b.begin(), p.b.end());
  std::sort(all.begin(), all.end());
  return all;
}

// Positions of `part` inside the sorted list `all`.
std::vector<int> positions(const std::vector<int>& all, const std::vector<int>& part) {
  std::vector<int> out;
  for (int k : part)
    out.push_back(static_cast<int>(std::find(all.begin(), all.end(), k) - all.begin()));
  return out;
}

void require_single(const Bipartition& p, const std::string& measure) {
  if (p.a.size() != 1) fail(ErrorKind::dimension, measure + " needs a single party on side A");
}

void require_pair(const Bipartition& p, const std::string& measure) {
  if (p.a.size() != 1 || p.b.size() != 1) {
    fail(ErrorKind::dimension, measure + " needs one party on each side");
  }
}

DensityMatrix qubit_block(const AnyState& state, const std::vector<int>& kept) {
  if (const auto* psi = std::get_if<QubitPureState>(&state)) {
    if (static_cast<int>(kept.size()) == psi->n_qubits()) return to_density_matrix(*psi);
    return reduced_state(*psi, QubitPartition(psi->n_qubits(), kept));
  }
  const auto& rho = std::get<DensityMatrix>(state);
  if (static_cast<int>(kept.size()) == rho.n_qubits()) return rho;
  return partial_trace(rho, QubitPartition(rho.n_qubits(), kept));
}

struct Measurement {
  double value = 0.0;
  json details = json::object();
};

Measurement measure_qubits(const AnyState& state, const std::string& name, const Bipartition& p) {
  Measurement m;
  const std::vector<int> all = joined(p);
  if (name == "concurrence" || name == "eof" || name == "tangle") {
    const auto* psi = std::get_if<QubitPureState>(&state);
    const int n = psi ? psi->n_qubits() : std::get<DensityMatrix>(state).n_qubits();
    if (name == "tangle" && psi && p.a.size() == 1 && static_cast<int>(all.size()) == n) {
      m.value = pure_tangle_one_vs_rest(*psi, p.a.front());
      return m;
    }
    require_pair(p, name);
    const DensityMatrix rho = qubit_block(state, all);
    if (name == "concurrence") m.value = concurrence(rho);
    if (name == "tangle") m.value = tangle_two_qubit(rho);
    if (name == "eof") m.value = entanglement_of_formation(rho);
    return m;
  }
  if (name == "negativity" || name == "log-negativity") {
    const DensityMatrix rho = qubit_block(state, all);
    const double n = negativity(rho, positions(all, p.a));
    m.value = name == "negativity" ? n : std::log2(2.0 * n + 1.0);
    return m;
  }
  if (name == "residual-tangle") {
    const auto* psi = std::get_if<QubitPureState>(&state);
    if (!psi) fail(ErrorKind::state, "residual-tangle needs a pure state");
    if (psi->n_qubits() != 3) fail(ErrorKind::dimension, "residual-tangle needs three qubits");
    require_single(p, name);
    const TangleDecomposition d = residual_tangle_three_qubits(*psi, p.a.front());
    m.value = d.residual;
    json pairwise = json::object();
    for (const auto& [k, v] : d.pairwise) pairwise[std::to_string(k)] = v;
    m.details = {{"focus", d.focus}, {"one_vs_rest", d.one_vs_rest}, {"pairwise", pairwise}};
    return m;
  }
  fail(ErrorKind::dimension, "measure '" + name + "' does not apply to qubit states");
}

Measurement measure_gaussian(const CovarianceMatrix& full, const std::string& name,
                             const Bipartition& p) {
  Measurement m;
  const std::vector<int> all = joined(p);
  const CovarianceMatrix cm =
      static_cast<int>(all.size()) == full.n_modes() ? full : reduced_cm(full, all);
  if (name == "residual-contangle") {
    const GaussianMonogamyReport r = residual_gaussian_contangle(full);
    m.value = r.minimum_residual;
    m.details = r.to_json();
    return m;
  }
  require_single(p, name);
  const int mode = positions(all, p.a).front();
  if (name == "log-negativity") {
    m.value = log_negativity(cm, mode);
  } else if (name == "negativity") {
    m.value = negativity_gaussian(cm, mode);
  } else if (name == "contangle") {
    const ContangleReport r = contangle_pure(cm, mode);
    m.value = r.value;
    m.details = r.to_json();
  } else if (name == "gaussian-contangle") {
    const ContangleReport r =
        cm.n_modes() == 2 ? gaussian_contangle(cm) : gaussian_contangle_one_vs_rest(cm, mode);
    m.value = r.value;
    m.details = r.to_json();
  } else {
    fail(ErrorKind::dimension, "measure '" + name + "' does not apply to Gaussian states");
  }
  return m;
}

int cmd_measure(const std::string& path, const std::string& name, const std::string& bipartition,
                const std::string& json_path) {
  const AnyState state = load_state(path);
  int parties = 0;
  std::visit(
      [&](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, CovarianceMatrix>) {
          parties = s.n_modes();
        } else {
          parties = s.n_qubits();
        }
      },
      state);
  const Bipartition p = parse_bipartition(bipartition, parties);
  const Measurement m = std::holds_alternative<CovarianceMatrix>(state)
                            ? measure_gaussian(std::get<CovarianceMatrix>(state), name, p)
                            : measure_qubits(state, name, p);
  std::printf("%.12f\n", m.value);
  if (!json_path.empty()) {
    const json doc = {{"measure", name},
                      {"value", m.value},
                      {"a", p.a},
                      {"b", p.b},
                      {"details", m.details}};
    write_text(json_path, doc.dump(2) + "\n");
  }
  return 0;
}

int cmd_verify(CampaignConfig config, const std::string& system,
               const std::optional<double>& tolerance) {
  config.system = parse_campaign_system(system);
  config.tolerance = tolerance.value_or(config.system == CampaignSystem::qubits
                                            ? kDefaultQubitTolerance
                                            : kDefaultGaussianTolerance);
  const CampaignResult result = run_campaign(config);
  const json doc = {{"config", config.to_json()}, {"summary", result.summary.to_json()}};
  const std::string text = doc.dump(2) + "\n";
  if (!config.output_path.empty()) write_text(config.output_path, text);
  if (!config.trials_csv_path.empty()) write_text(config.trials_csv_path, trials_csv(result.trials));
  std::cout << text;
  std::fprintf(stderr, "elapsed %.3f s\n", result.summary.elapsed_seconds);
  return 0;
}

int cmd_sweep(double r_min, double r_max, int steps, const std::string& out) {
  if (!(r_min >= 0.0) || !(r_max > r_min)) fail(ErrorKind::domain, "need 0 <= r-min < r-max");
  if (steps < 2) fail(ErrorKind::domain, "need at least two steps");
  std::vector<double> grid;
  for (int k = 0; k < steps; ++k) grid.push_back(r_min + (r_max - r_min) * k / (steps - 1));
  const std::string text = sweep_csv(promiscuity_sweep(grid));
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text(out, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement monogamy toolkit for qubits and Gaussian modes"};
  app.require_subcommand(1);

  std::string state_path, measure_name, bipartition, json_path;
  auto* measure = app.add_subcommand("measure", "Evaluate one measure on a stored state");
  measure->add_option("--state", state_path, "State file (JSON)")->required();
  measure->add_option("--measure", measure_name,
                      "concurrence, tangle, eof, negativity, log-negativity, contangle, "
                      "gaussian-contangle, residual-tangle, residual-contangle")
      ->required()
      ->check(CLI::IsMember({"concurrence", "tangle", "eof", "negativity", "log-negativity",
                             "contangle", "gaussian-contangle", "residual-tangle",
                             "residual-contangle"}));
  measure->add_option("--bipartition", bipartition, "A|B with 0-based indices, e.g. 0|1,2");
  measure->add_option("--json", json_path, "Write a JSON report here");

  CampaignConfig config;
  std::string system = "qubits";
  std::optional<double> tolerance;
  auto* verify = app.add_subcommand("verify", "Seeded random monogamy campaign");
  verify->add_option("--system", system, "qubits or gaussian")->capture_default_str();
  verify->add_option("--n-parties", config.n_parties)->capture_default_str();
  verify->add_option("--trials", config.trials)->capture_default_str();
  verify->add_option("--seed", config.seed)->capture_default_str();
  verify->add_option("--first-trial", config.first_trial, "Index of the first trial")
      ->capture_default_str();
  verify->add_option("--tolerance", tolerance, "Violation threshold (1e-9 qubits, 1e-7 Gaussian)");
  verify->add_option("--r-max", config.r_max, "Largest squeezing (Gaussian)")->capture_default_str();
  verify->add_option("--n-max", config.n_max, "Largest symplectic eigenvalue; <= 1 is pure")
      ->capture_default_str();
  verify->add_option("--out", config.output_path, "Summary JSON path");
  verify->add_option("--csv", config.trials_csv_path, "Per-trial CSV path");

  double sweep_min = 0.0, sweep_max = 1.5;
  int sweep_steps = 16;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep-ghzw", "Promiscuity table for the GHZ/W family");
  sweep->add_option("--r-min", sweep_min)->capture_default_str();
  sweep->add_option("--r-max", sweep_max)->capture_default_str();
  sweep->add_option("--steps", sweep_steps)->capture_default_str();
  sweep->add_option("--out", sweep_out, "CSV path (stdout if omitted)");

  std::string gen_name, gen_out;
  double gen_r = 1.0;
  auto* gen = app.add_subcommand("gen", "Write a canonical state");
  gen->add_option("name", gen_name, "bell, ghz, w, ghz4, w4, tms, ghzw-cv")->required();
  gen->add_option("--r", gen_r, "Squeezing for Gaussian states")->capture_default_str();
  gen->add_option("--out", gen_out, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (*measure) return cmd_measure(state_path, measure_name, bipartition, json_path);
    if (*verify) return cmd_verify(config, system, tolerance);
    if (*sweep) return cmd_sweep(sweep_min, sweep_max, sweep_steps, sweep_out);
    if (*gen) {
      save_state(gen_out, canonical_state(gen_name, gen_r));
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 5;
  }
  return 0;
}
