#include "qmc/level_set.hpp"

#include <algorithm>
#include <bit>
#include <new>
#include <stdexcept>
#include <string>

#include "qmc/errors.hpp"

namespace qmc::sparse {
namespace {

constexpr std::size_t kMinCapacity = 16;
constexpr std::size_t kMaxCapacity = std::size_t{1} << 40;

std::size_t capacity_for(std::size_t entries) {
  if (entries > kMaxCapacity / 2) {
    throw ResourceError("level set of " + std::to_string(entries) + " entries exceeds the maximum table size",
                        static_cast<std::uint64_t>(entries) * 2 * sizeof(std::uint64_t));
  }
  return std::max(kMinCapacity, std::bit_ceil(entries * 2));
}

}  // namespace

LevelSet::LevelSet(std::size_t expected) { rehash(capacity_for(expected)); }

std::uint64_t LevelSet::hash(std::uint64_t x) noexcept {
  // murmur3 fmix64
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ull;
  x ^= x >> 33;
  return x;
}

LevelSet::Probe LevelSet::find(std::uint64_t bits) const noexcept {
  if (slots_.empty()) return Probe::Absent;
  const std::size_t mask = slots_.size() - 1;
  const std::uint64_t key = bits | kOccupied;
  for (std::size_t i = hash(bits) & mask;; i = (i + 1) & mask) {
    const std::uint64_t slot = slots_[i];
    if (slot == 0) return Probe::Absent;
    if ((slot & ~kDeleted) == key) return (slot & kDeleted) ? Probe::Deleted : Probe::Live;
  }
}

bool LevelSet::insert(PackedImplicant p) {
  if (p.bits & PackedImplicant::kFlagMask) throw std::invalid_argument("packed implicant has control flags set");
  if ((entries_ + 1) * 2 > slots_.size()) rehash(capacity_for(entries_ + 1));
  const std::size_t mask = slots_.size() - 1;
  const std::uint64_t key = p.bits | kOccupied;
  for (std::size_t i = hash(p.bits) & mask;; i = (i + 1) & mask) {
    const std::uint64_t slot = slots_[i];
    if (slot == 0) {
      slots_[i] = key;
      ++entries_;
      return true;
    }
    if ((slot & ~kDeleted) == key) return false;
  }
}

bool LevelSet::mark_deleted(PackedImplicant p) noexcept {
  if (slots_.empty()) return false;
  const std::size_t mask = slots_.size() - 1;
  const std::uint64_t key = p.bits | kOccupied;
  for (std::size_t i = hash(p.bits) & mask;; i = (i + 1) & mask) {
    const std::uint64_t slot = slots_[i];
    if (slot == 0) return false;
    if (slot == key) {
      slots_[i] = key | kDeleted;
      ++deleted_;
      return true;
    }
    if (slot == (key | kDeleted)) return false;
  }
}

std::vector<PackedImplicant> LevelSet::live_items() const {
  std::vector<PackedImplicant> out;
  out.reserve(live_count());
  for_each_live([&](PackedImplicant p) { out.push_back(p); });
  return out;
}

void LevelSet::clear() noexcept {
  std::vector<std::uint64_t>().swap(slots_);
  entries_ = 0;
  deleted_ = 0;
}

void LevelSet::rehash(std::size_t new_capacity) {
  std::vector<std::uint64_t> old;
  old.swap(slots_);
  try {
    slots_.assign(new_capacity, 0);
  } catch (const std::bad_alloc&) {
    slots_.swap(old);
    throw ResourceError("allocation of " + std::to_string(new_capacity * sizeof(std::uint64_t)) +
                            " bytes for a level set failed",
                        new_capacity * sizeof(std::uint64_t));
  }
  const std::size_t mask = new_capacity - 1;
  for (std::uint64_t slot : old) {
    if (slot == 0) continue;
    std::size_t i = hash(slot & ~PackedImplicant::kFlagMask) & mask;
    while (slots_[i] != 0) i = (i + 1) & mask;
    slots_[i] = slot;
  }
}

}  // namespace qmc::sparse
