#pragma once

// Minterm strings over {0, 1, *} and their integer encodings.
//
// Positions are 0-based in this API: position k holds the symbol of variable
// x_{k+1}. Variable 1 is the least significant digit both in the base-3 rank
// and in truth-table point indices.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qmc {

inline constexpr int kMaxVars = 31;

enum class Symbol : std::uint8_t { Zero = 0, One = 1, Star = 2 };

/// Base-3 rank of a ternary string, in [0, 3^n).
using Rank = std::uint64_t;

/// Binary point x in {0,1}^n; bit k is x_{k+1}.
using Point = std::uint32_t;

inline constexpr std::array<std::uint64_t, kMaxVars + 2> kPow3 = [] {
  std::array<std::uint64_t, kMaxVars + 2> p{};
  p[0] = 1;
  for (std::size_t i = 1; i < p.size(); ++i) p[i] = p[i - 1] * 3;
  return p;
}();

constexpr std::uint64_t pow3(int k) { return kPow3[static_cast<std::size_t>(k)]; }

class TernaryString {
 public:
  /// All-ZERO string of length n. Throws std::invalid_argument unless 1 <= n <= 31.
  explicit TernaryString(int n);

  /// Builds from explicit masks; bit k of `ones` / `stars` describe position k.
  static TernaryString from_masks(int n, std::uint32_t ones, std::uint32_t stars);

  /// Star-free string of a binary point.
  static TernaryString from_point(int n, Point x);

  /// Accepts '0', '1', '*' and '-' (PLA wildcard). Leftmost character is x_1.
  static TernaryString parse(std::string_view text);

  int size() const noexcept { return n_; }
  Symbol operator[](int k) const noexcept {
    if ((stars_ >> k) & 1u) return Symbol::Star;
    return ((ones_ >> k) & 1u) ? Symbol::One : Symbol::Zero;
  }

  TernaryString with(int k, Symbol sym) const;

  int weight() const noexcept;
  std::uint32_t ones_mask() const noexcept { return ones_; }
  std::uint32_t star_mask() const noexcept { return stars_; }

  std::string to_string(char wildcard = '*') const;

  friend bool operator==(const TernaryString&, const TernaryString&) = default;

 private:
  TernaryString(int n, std::uint32_t ones, std::uint32_t stars) : ones_(ones), stars_(stars), n_(static_cast<std::uint8_t>(n)) {}

  std::uint32_t ones_ = 0;   // ONE positions, disjoint from stars_
  std::uint32_t stars_ = 0;
  std::uint8_t n_ = 0;
};

Rank rank(const TernaryString& s) noexcept;

/// Throws std::invalid_argument if r >= 3^n or n is out of range.
TernaryString unrank(Rank r, int n);

/// True iff every position of s is STAR or equals the corresponding bit of x.
bool covers(const TernaryString& s, Point x) noexcept;

/// True iff every point covered by `inner` is covered by `outer`.
bool covers(const TernaryString& outer, const TernaryString& inner) noexcept;

/// Canonical order used for sets of strings.
struct RankLess {
  bool operator()(const TernaryString& a, const TernaryString& b) const noexcept {
    return rank(a) < rank(b);
  }
};

/// Two bits per symbol: 00 ZERO, 01 ONE, 10 STAR. Symbol k (0-based) sits at
/// bits [2k, 2k+1]; the two most significant bits are control flags.
struct PackedImplicant {
  std::uint64_t bits = 0;

  static constexpr std::uint64_t kFlagMask = 0xC000'0000'0000'0000ull;
  static constexpr std::uint64_t kLowBits = 0x5555'5555'5555'5555ull & ~kFlagMask;
  static constexpr std::uint64_t kHighBits = 0xAAAA'AAAA'AAAA'AAAAull & ~kFlagMask;

  friend bool operator==(PackedImplicant, PackedImplicant) = default;
};

PackedImplicant pack(const TernaryString& s) noexcept;

/// Throws std::invalid_argument on flags set, a 11 chunk, or chunks past n.
TernaryString unpack(PackedImplicant p, int n);

}  // namespace qmc
