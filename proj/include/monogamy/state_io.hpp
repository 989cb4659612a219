#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "json.hpp"
#include "monogamy/gaussian_core.hpp"
#include "monogamy/qubit_core.hpp"

namespace monogamy {

/// Any state the command-line tools can read or write.
using AnyState = std::variant<QubitPureState, DensityMatrix, CovarianceMatrix>;

// JSON layouts:
//   pure qubits:   {"n_qubits": n, "amplitudes": [[re, im], ...]}        (2^n entries)
//   density:       {"n_qubits": n, "matrix": [[[re, im], ...], ...]}     (row-major)
//   Gaussian:      {"n_modes": N, "sigma": [[...], ...]}                 (row-major, 2N x 2N)

nlohmann::json to_json(const QubitPureState& psi);
nlohmann::json to_json(const DensityMatrix& rho);
nlohmann::json to_json(const CovarianceMatrix& cm);
nlohmann::json to_json(const AnyState& state);

/// Throws ErrorKind::parse for malformed documents and the validation error
/// of the target type for well-formed but invalid contents.
AnyState state_from_json(const nlohmann::json& doc);

AnyState load_state(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& contents);
void save_state(const std::filesystem::path& path, const AnyState& state);

/// Canonical states: bell, ghz, w, ghz4, w4, tms, ghzw-cv. `r` is the
/// squeezing for the Gaussian ones.
AnyState canonical_state(const std::string& name, double r);

/// Shortest decimal that round-trips, capped at 12 significant digits.
std::string format_number(double x);

}  // namespace monogamy
