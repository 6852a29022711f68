#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qmc/ternary.hpp"
#include "qmc/truth_table.hpp"

namespace qmc::test {

// Point index of a binary string written x_1 first.
inline Point point(const std::string& bits) {
  Point x = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') x |= Point{1} << k;
  }
  return x;
}

inline TruthTable table(int n, const std::vector<std::string>& points) {
  TruthTable tt(n);
  for (const auto& p : points) tt.set(point(p));
  return tt;
}

inline std::vector<std::string> strings(const std::vector<TernaryString>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

inline TruthTable maj3() { return table(3, {"011", "101", "110", "111"}); }

// Every point of s, by direct enumeration of its free positions.
inline std::vector<Point> points_of(const TernaryString& s) {
  std::vector<Point> out;
  const std::uint32_t stars = s.star_mask();
  std::uint32_t sub = 0;
  do {
    out.push_back(s.ones_mask() | sub);
    sub = (sub - stars) & stars;
  } while (sub != 0);
  return out;
}

inline bool implicant(const TernaryString& s, const TruthTable& tt) {
  for (Point x : points_of(s)) {
    if (!tt.test(x)) return false;
  }
  return true;
}

// Every output covers only support points, the outputs jointly cover the
// support, no output can be widened, and every star can be narrowed to
// two implicants. Returns an empty string on success.
inline std::string check_prime_set(const std::vector<TernaryString>& primes, const TruthTable& tt) {
  std::vector<bool> covered(tt.num_points(), false);
  for (const auto& s : primes) {
    if (!implicant(s, tt)) return "not an implicant: " + s.to_string();
    for (Point x : points_of(s)) covered[x] = true;
    for (int k = 0; k < s.size(); ++k) {
      if (s[k] == Symbol::Star) {
        if (!implicant(s.with(k, Symbol::Zero), tt) || !implicant(s.with(k, Symbol::One), tt)) {
          return "parent not an implicant: " + s.to_string();
        }
      } else if (implicant(s.with(k, Symbol::Star), tt)) {
        return "not prime: " + s.to_string();
      }
    }
  }
  for (Point x = 0; x < tt.num_points(); ++x) {
    if (covered[x] != tt.test(x)) return "cover mismatch at point " + std::to_string(x);
  }
  return {};
}

inline bool antichain(const std::vector<TernaryString>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (i != j && covers(v[i], v[j])) return false;
    }
  }
  return true;
}

inline TernaryString random_string(int n, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> sym(0, 2);
  TernaryString s(n);
  for (int k = 0; k < n; ++k) s = s.with(k, static_cast<Symbol>(sym(gen)));
  return s;
}

}  // namespace qmc::test
