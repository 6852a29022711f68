#pragma once

#include <cstdint>

#include "qmc/truth_table.hpp"

namespace qmc {

enum class Sampling {
  /// Every point independently with probability = density.
  Bernoulli,
  /// Exactly round(density * 2^n) points, uniformly chosen.
  ExactCount,
};

/// SplitMix64 output for `stream` under `seed`; used to derive independent
/// generator seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Seeded random function. The generator is std::mt19937_64 seeded with
/// derive_seed(seed, n); draws are consumed in increasing point order, and
/// only integer arithmetic decides membership, so output is identical on
/// every platform. Throws std::invalid_argument unless 0 <= density <= 1.
TruthTable random_function(int n, double density, std::uint64_t seed, Sampling sampling = Sampling::Bernoulli);

}  // namespace qmc
