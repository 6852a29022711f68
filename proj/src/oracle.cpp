#include "qmc/oracle.hpp"

#include <stdexcept>
#include <string>

#include "qmc/errors.hpp"

namespace qmc::oracle {

bool is_implicant(const TernaryString& s, const TruthTable& tt, int max_vars) {
  if (s.size() != tt.num_vars()) throw std::invalid_argument("string length does not match the truth table");
  if (tt.num_vars() > max_vars) {
    throw GuardError("is_implicant is limited to n <= " + std::to_string(max_vars) + ", got n=" +
                     std::to_string(tt.num_vars()));
  }
  // Enumerate every subset of the wildcard positions.
  const std::uint32_t stars = s.star_mask();
  std::uint32_t sub = 0;
  do {
    if (!tt.test(s.ones_mask() | sub)) return false;
    sub = (sub - stars) & stars;
  } while (sub != 0);
  return true;
}

std::vector<TernaryString> primes(const TruthTable& tt, int max_vars) {
  const int n = tt.num_vars();
  if (n > max_vars) {
    throw GuardError("oracle primes are limited to n <= " + std::to_string(max_vars) + ", got n=" + std::to_string(n));
  }
  const Rank total = pow3(n);
  std::vector<bool> implicant(total);
  for (Rank r = 0; r < total; ++r) implicant[r] = is_implicant(unrank(r, n), tt, max_vars);

  std::vector<TernaryString> out;
  for (Rank r = 0; r < total; ++r) {
    if (!implicant[r]) continue;
    const TernaryString s = unrank(r, n);
    bool prime = true;
    for (int k = 0; k < n && prime; ++k) {
      if (s[k] == Symbol::Star) continue;
      if (implicant[rank(s.with(k, Symbol::Star))]) prime = false;
    }
    if (prime) out.push_back(s);
  }
  return out;
}

}  // namespace qmc::oracle
