#pragma once

// Level-by-level prime-implicant engine over packed implicants.
//
// Level w holds every implicant with w wildcards. An implicant u of level w
// is produced from exactly one pair (s, t) of level w-1: the pair merged at
// the first wildcard of u. Pairs merged at later wildcards are skipped during
// generation and only visited afterwards to mark parents redundant.

#include <cstddef>
#include <vector>

#include "qmc/level_set.hpp"
#include "qmc/ternary.hpp"
#include "qmc/truth_table.hpp"

namespace qmc::sparse {

/// Every implicant with one more wildcard than the entries of prev, each
/// exactly once. For each entry s (live or deleted) and each ZERO position i
/// preceding the first wildcard of s, emits s[i -> *] when s[i -> 1] is an
/// entry of prev.
std::vector<PackedImplicant> generate_level(const LevelSet& prev, int n);

/// Marks both parents u[j -> 0] and u[j -> 1] deleted in prev, for every
/// item u and every wildcard position j of u.
void mark_parents_redundant(LevelSet& prev, const std::vector<PackedImplicant>& items);

struct SparseStats {
  /// level_sizes[w] = |L_w| for every level that was built.
  std::vector<std::size_t> level_sizes;
};

/// All prime implicants of tt, in increasing rank order.
std::vector<TernaryString> find_primes(const TruthTable& tt, SparseStats* stats = nullptr);

}  // namespace qmc::sparse
