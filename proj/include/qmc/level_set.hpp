#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qmc/ternary.hpp"

namespace qmc::sparse {

/// Open-addressing set of packed implicants with linear probing.
///
/// Slots hold the packed word with one control flag marking the slot as
/// occupied (so the all-ZERO implicant is distinguishable from an empty
/// slot) and the other marking the entry deleted. Deleted entries stay in
/// place; the table never shrinks. Capacity is a power of two and the load
/// factor never exceeds 1/2.
class LevelSet {
 public:
  static constexpr std::uint64_t kOccupied = std::uint64_t{1} << 62;
  static constexpr std::uint64_t kDeleted = std::uint64_t{1} << 63;

  LevelSet() = default;

  /// Pre-sizes for `expected` entries.
  explicit LevelSet(std::size_t expected);

  /// Returns false if p is already present (live or deleted).
  bool insert(PackedImplicant p);

  /// Live membership.
  bool contains(PackedImplicant p) const noexcept { return find(p.bits) == Probe::Live; }

  /// Membership regardless of deletion marks.
  bool contains_entry(PackedImplicant p) const noexcept { return find(p.bits) != Probe::Absent; }

  /// Returns true if p was live and is now marked; absent or already
  /// marked entries are left alone.
  bool mark_deleted(PackedImplicant p) noexcept;

  std::size_t size() const noexcept { return entries_; }
  std::size_t live_count() const noexcept { return entries_ - deleted_; }
  std::size_t deleted_count() const noexcept { return deleted_; }
  std::size_t capacity() const noexcept { return slots_.size(); }

  std::vector<PackedImplicant> live_items() const;

  /// Calls f(PackedImplicant) on every entry, live or deleted.
  template <class F>
  void for_each_entry(F&& f) const {
    for (std::uint64_t slot : slots_) {
      if (slot & kOccupied) f(PackedImplicant{slot & ~PackedImplicant::kFlagMask});
    }
  }

  template <class F>
  void for_each_live(F&& f) const {
    for (std::uint64_t slot : slots_) {
      if ((slot & (kOccupied | kDeleted)) == kOccupied) f(PackedImplicant{slot & ~kOccupied});
    }
  }

  /// Drops all entries and releases the table.
  void clear() noexcept;

  static std::uint64_t hash(std::uint64_t bits) noexcept;

 private:
  enum class Probe { Absent, Live, Deleted };

  Probe find(std::uint64_t bits) const noexcept;
  void rehash(std::size_t new_capacity);

  std::vector<std::uint64_t> slots_;
  std::size_t entries_ = 0;
  std::size_t deleted_ = 0;
};

}  // namespace qmc::sparse
