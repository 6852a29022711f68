#pragma once

// Brute-force reference for prime implicants. Shares nothing with the
// engines beyond the ternary string type and its rank.

#include <vector>

#include "qmc/ternary.hpp"
#include "qmc/truth_table.hpp"

namespace qmc::oracle {

inline constexpr int kImplicantMaxVars = 14;
inline constexpr int kPrimesMaxVars = 12;

/// True iff every point covered by s lies in the support of tt.
/// Throws GuardError if n > max_vars, std::invalid_argument on length mismatch.
bool is_implicant(const TernaryString& s, const TruthTable& tt, int max_vars = kImplicantMaxVars);

/// Implicants of tt none of whose single-position widenings is an implicant,
/// in increasing rank order. Costs 4^n point tests.
std::vector<TernaryString> primes(const TruthTable& tt, int max_vars = kPrimesMaxVars);

}  // namespace qmc::oracle
