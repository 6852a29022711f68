#include "qmc/truth_table.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace qmc {

TruthTable::TruthTable(int n) : n_(n) {
  if (n < 1 || n > kMaxVars) {
    throw std::invalid_argument("variable count must be in [1, 31], got " + std::to_string(n));
  }
  words_.assign(static_cast<std::size_t>(((std::uint64_t{1} << n) + 63) / 64), 0);
}

TruthTable TruthTable::constant_one(int n) {
  TruthTable tt(n);
  for (auto& w : tt.words_) w = ~std::uint64_t{0};
  if (n < 6) tt.words_[0] = (std::uint64_t{1} << (1u << n)) - 1;
  return tt;
}

std::uint64_t TruthTable::popcount() const noexcept {
  std::uint64_t c = 0;
  for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

std::vector<Point> TruthTable::support() const {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(popcount()));
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (std::uint64_t w = words_[i]; w != 0; w &= w - 1) {
      out.push_back(static_cast<Point>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
    }
  }
  return out;
}

}  // namespace qmc
