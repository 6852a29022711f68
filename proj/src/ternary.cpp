#include "qmc/ternary.hpp"

#include <bit>
#include <stdexcept>

namespace qmc {
namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxVars) {
    throw std::invalid_argument("variable count must be in [1, 31], got " + std::to_string(n));
  }
}

constexpr std::uint32_t low_mask(int n) { return n >= 32 ? ~0u : ((1u << n) - 1u); }

// Moves bit k of a 32-bit value to bit 2k.
constexpr std::uint64_t spread(std::uint32_t v) {
  std::uint64_t x = v;
  x = (x | (x << 16)) & 0x0000'FFFF'0000'FFFFull;
  x = (x | (x << 8)) & 0x00FF'00FF'00FF'00FFull;
  x = (x | (x << 4)) & 0x0F0F'0F0F'0F0F'0F0Full;
  x = (x | (x << 2)) & 0x3333'3333'3333'3333ull;
  x = (x | (x << 1)) & 0x5555'5555'5555'5555ull;
  return x;
}

// Inverse of spread on the even bits.
constexpr std::uint32_t compact(std::uint64_t x) {
  x &= 0x5555'5555'5555'5555ull;
  x = (x | (x >> 1)) & 0x3333'3333'3333'3333ull;
  x = (x | (x >> 2)) & 0x0F0F'0F0F'0F0F'0F0Full;
  x = (x | (x >> 4)) & 0x00FF'00FF'00FF'00FFull;
  x = (x | (x >> 8)) & 0x0000'FFFF'0000'FFFFull;
  x = (x | (x >> 16)) & 0x0000'0000'FFFF'FFFFull;
  return static_cast<std::uint32_t>(x);
}

}  // namespace

TernaryString::TernaryString(int n) : n_(static_cast<std::uint8_t>(n)) { check_n(n); }

TernaryString TernaryString::from_masks(int n, std::uint32_t ones, std::uint32_t stars) {
  check_n(n);
  if (((ones | stars) & ~low_mask(n)) != 0 || (ones & stars) != 0) {
    throw std::invalid_argument("inconsistent ternary masks");
  }
  return TernaryString(n, ones, stars);
}

TernaryString TernaryString::from_point(int n, Point x) { return from_masks(n, x, 0); }

TernaryString TernaryString::parse(std::string_view text) {
  const int n = static_cast<int>(text.size());
  check_n(n);
  std::uint32_t ones = 0;
  std::uint32_t stars = 0;
  for (int k = 0; k < n; ++k) {
    switch (text[static_cast<std::size_t>(k)]) {
      case '0': break;
      case '1': ones |= 1u << k; break;
      case '*':
      case '-': stars |= 1u << k; break;
      default:
        throw std::invalid_argument("invalid ternary symbol '" + std::string(1, text[static_cast<std::size_t>(k)]) +
                                    "' at position " + std::to_string(k + 1));
    }
  }
  return TernaryString(n, ones, stars);
}

TernaryString TernaryString::with(int k, Symbol sym) const {
  if (k < 0 || k >= n_) throw std::out_of_range("position out of range");
  TernaryString r = *this;
  const std::uint32_t bit = 1u << k;
  r.ones_ &= ~bit;
  r.stars_ &= ~bit;
  if (sym == Symbol::One) r.ones_ |= bit;
  if (sym == Symbol::Star) r.stars_ |= bit;
  return r;
}

int TernaryString::weight() const noexcept { return std::popcount(stars_); }

std::string TernaryString::to_string(char wildcard) const {
  std::string out(n_, '0');
  for (int k = 0; k < n_; ++k) {
    const Symbol sym = (*this)[k];
    out[static_cast<std::size_t>(k)] = sym == Symbol::Star ? wildcard : (sym == Symbol::One ? '1' : '0');
  }
  return out;
}

Rank rank(const TernaryString& s) noexcept {
  Rank r = 0;
  for (int k = s.size() - 1; k >= 0; --k) r = r * 3 + static_cast<Rank>(s[k]);
  return r;
}

TernaryString unrank(Rank r, int n) {
  check_n(n);
  if (r >= pow3(n)) {
    throw std::invalid_argument("rank " + std::to_string(r) + " out of range for n=" + std::to_string(n));
  }
  std::uint32_t ones = 0;
  std::uint32_t stars = 0;
  for (int k = 0; k < n; ++k) {
    const Rank digit = r % 3;
    r /= 3;
    if (digit == 1) ones |= 1u << k;
    if (digit == 2) stars |= 1u << k;
  }
  return TernaryString::from_masks(n, ones, stars);
}

bool covers(const TernaryString& s, Point x) noexcept {
  return ((x ^ s.ones_mask()) & ~s.star_mask() & low_mask(s.size())) == 0;
}

bool covers(const TernaryString& outer, const TernaryString& inner) noexcept {
  if (outer.size() != inner.size()) return false;
  // Every fixed position of outer must be fixed to the same value in inner.
  const std::uint32_t fixed = ~outer.star_mask() & low_mask(outer.size());
  return (inner.star_mask() & fixed) == 0 && ((inner.ones_mask() ^ outer.ones_mask()) & fixed) == 0;
}

PackedImplicant pack(const TernaryString& s) noexcept {
  return PackedImplicant{spread(s.ones_mask()) | (spread(s.star_mask()) << 1)};
}

TernaryString unpack(PackedImplicant p, int n) {
  check_n(n);
  if (p.bits & PackedImplicant::kFlagMask) throw std::invalid_argument("packed implicant has control flags set");
  const std::uint64_t lo = p.bits & 0x5555'5555'5555'5555ull;
  const std::uint64_t hi = (p.bits >> 1) & 0x5555'5555'5555'5555ull;
  if (lo & hi) throw std::invalid_argument("packed implicant holds an invalid 11 chunk");
  const std::uint32_t ones = compact(lo);
  const std::uint32_t stars = compact(hi);
  if ((ones | stars) & ~low_mask(n)) throw std::invalid_argument("packed implicant has symbols beyond n");
  return TernaryString::from_masks(n, ones, stars);
}

}  // namespace qmc
