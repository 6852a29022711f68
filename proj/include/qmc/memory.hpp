#pragma once

#include <cstdint>
#include <optional>

namespace qmc::memory {

/// 75% of available physical memory (MemAvailable, falling back to total
/// physical pages).
std::uint64_t default_memory_cap();

/// Resident set size of this process, from /proc/self/status.
std::optional<std::uint64_t> current_rss_bytes();

/// High-water mark of the resident set (VmHWM).
std::optional<std::uint64_t> peak_rss_bytes();

/// Resets VmHWM to the current RSS. Returns false where unsupported.
bool reset_peak_rss();

/// Heap bytes currently allocated through global operator new.
std::uint64_t allocated_bytes();

/// Highest value of allocated_bytes() since the last reset_peak_allocated().
std::uint64_t peak_allocated_bytes();

void reset_peak_allocated();

}  // namespace qmc::memory
