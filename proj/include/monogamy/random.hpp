#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace monogamy {

using Rng = std::mt19937_64;

/// Counter-based derivation of an independent stream seed from (seed, index).
/// Every trial or restart draws from its own stream, so results do not depend
/// on the order in which work items are scheduled.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

Rng make_rng(std::uint64_t seed, std::uint64_t index);

/// Matrix of i.i.d. standard complex normals (real and imaginary parts N(0, 1/2)).
Eigen::MatrixXcd complex_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary from the QR decomposition of a Ginibre matrix,
/// with the phases of R's diagonal absorbed into Q.
Eigen::MatrixXcd haar_unitary(Eigen::Index n, Rng& rng);

}  // namespace monogamy
