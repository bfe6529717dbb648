#pragma once

#include "qmaps/kinematics.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qmaps {

/// Random full-rank density matrix X X^dagger / Tr(X X^dagger) with complex
/// Gaussian X.
DensityMatrix random_density(int dimension, std::mt19937_64& rng);

struct SelftestCheck {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  int cases = 0;

  bool passed() const noexcept { return error <= tolerance; }
};

/// Oracle equivalences: fast diffusion against the Kraus sum, the Wigner
/// commuting diagram, FFT Wigner against the point-operator definition, and
/// factored propagators against their dense matrices.
std::vector<SelftestCheck> run_selftest(std::uint64_t seed = 20240607);

} // namespace qmaps
