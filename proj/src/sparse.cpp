#include "qmc/sparse.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace qmc::sparse {
namespace {

constexpr std::uint64_t kLow = PackedImplicant::kLowBits;
constexpr std::uint64_t kHigh = PackedImplicant::kHighBits;

// Low bit of every chunk inside the first n symbols.
constexpr std::uint64_t chunk_low_bits(int n) { return kLow & ((std::uint64_t{1} << (2 * n)) - 1); }

void append_live(const LevelSet& level, int n, std::vector<std::pair<Rank, TernaryString>>& out) {
  level.for_each_live([&](PackedImplicant p) {
    const TernaryString s = unpack(p, n);
    out.emplace_back(rank(s), s);
  });
}

}  // namespace

std::vector<PackedImplicant> generate_level(const LevelSet& prev, int n) {
  const std::uint64_t lows = chunk_low_bits(n);
  std::vector<PackedImplicant> out;
  prev.for_each_entry([&](PackedImplicant entry) {
    const std::uint64_t s = entry.bits;
    const std::uint64_t stars = s & kHigh;
    // Chunks strictly below the first wildcard (all chunks if none).
    const std::uint64_t before_first_star = stars == 0 ? ~std::uint64_t{0} : (stars & (~stars + 1)) - 1;
    std::uint64_t zeros = ~(s | (s >> 1)) & lows & before_first_star;
    for (; zeros != 0; zeros &= zeros - 1) {
      const std::uint64_t bit = zeros & (~zeros + 1);
      if (prev.contains_entry(PackedImplicant{s | bit})) out.push_back(PackedImplicant{s | (bit << 1)});
    }
  });
  return out;
}

void mark_parents_redundant(LevelSet& prev, const std::vector<PackedImplicant>& items) {
  for (PackedImplicant u : items) {
    for (std::uint64_t stars = u.bits & kHigh; stars != 0; stars &= stars - 1) {
      const std::uint64_t star_bit = stars & (~stars + 1);
      const std::uint64_t zero_parent = u.bits & ~star_bit;
      prev.mark_deleted(PackedImplicant{zero_parent});
      prev.mark_deleted(PackedImplicant{zero_parent | (star_bit >> 1)});
    }
  }
}

std::vector<TernaryString> find_primes(const TruthTable& tt, SparseStats* stats) {
  const int n = tt.num_vars();
  std::vector<std::pair<Rank, TernaryString>> primes;

  LevelSet prev(static_cast<std::size_t>(tt.popcount()));
  for (Point x : tt.support()) prev.insert(pack(TernaryString::from_point(n, x)));
  if (stats != nullptr) stats->level_sizes.assign(1, prev.size());

  for (int w = 1; w <= n && prev.size() != 0; ++w) {
    std::vector<PackedImplicant> items = generate_level(prev, n);
    if (stats != nullptr) stats->level_sizes.push_back(items.size());
    if (items.empty()) break;
    LevelSet next(items.size());
    for (PackedImplicant p : items) next.insert(p);
    mark_parents_redundant(prev, items);
    std::vector<PackedImplicant>().swap(items);
    append_live(prev, n, primes);
    prev = std::move(next);
  }
  append_live(prev, n, primes);

  std::sort(primes.begin(), primes.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<TernaryString> out;
  out.reserve(primes.size());
  for (auto& [r, s] : primes) out.push_back(s);
  return out;
}

}  // namespace qmc::sparse
