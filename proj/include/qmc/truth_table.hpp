#pragma once

#include <cstdint>
#include <vector>

#include "qmc/ternary.hpp"

namespace qmc {

/// Support indicator of f : {0,1}^n -> {0,1}. Point x is indexed by
/// sum_k 2^k x_{k+1}.
class TruthTable {
 public:
  /// Empty support. Throws std::invalid_argument unless 1 <= n <= 31.
  explicit TruthTable(int n);

  static TruthTable constant_one(int n);

  int num_vars() const noexcept { return n_; }
  std::uint64_t num_points() const noexcept { return std::uint64_t{1} << n_; }

  bool test(Point x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void set(Point x, bool value = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (value) {
      words_[x >> 6] |= bit;
    } else {
      words_[x >> 6] &= ~bit;
    }
  }

  std::uint64_t popcount() const noexcept;
  double density() const noexcept { return static_cast<double>(popcount()) / static_cast<double>(num_points()); }

  /// Support points in increasing index order.
  std::vector<Point> support() const;

  /// Backing words; bits past 2^n are always zero.
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  int n_;
  std::vector<std::uint64_t> words_;
};

}  // namespace qmc
