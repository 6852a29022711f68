#include "qmc/random.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qmc {
namespace {

// Uniform integer in [0, bound) by rejection on the top bits.
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t x = gen();
    if (x < limit) return x % bound;
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

TruthTable random_function(int n, double density, std::uint64_t seed, Sampling sampling) {
  if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density must be in [0, 1]");
  TruthTable tt(n);
  std::mt19937_64 gen(derive_seed(seed, static_cast<std::uint64_t>(n)));
  const std::uint64_t points = tt.num_points();

  if (sampling == Sampling::Bernoulli) {
    // Point is set iff its 53-bit draw is below density * 2^53.
    const auto threshold = static_cast<std::uint64_t>(std::ldexp(density, 53));
    for (std::uint64_t x = 0; x < points; ++x) {
      if ((gen() >> 11) < threshold) tt.set(static_cast<Point>(x));
    }
    return tt;
  }

  // Selection sampling: keep point x with probability needed / remaining.
  std::uint64_t needed = static_cast<std::uint64_t>(std::llround(density * static_cast<double>(points)));
  for (std::uint64_t x = 0; x < points && needed > 0; ++x) {
    if (bounded(gen, points - x) < needed) {
      tt.set(static_cast<Point>(x));
      --needed;
    }
  }
  return tt;
}

}  // namespace qmc
