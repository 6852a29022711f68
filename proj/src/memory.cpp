#include "qmc/memory.hpp"

#include <unistd.h>

#include <fstream>
#include <sstream>
#include <string>

namespace qmc::memory {
namespace {

// Reads a "Key:   1234 kB" line from a /proc file.
std::optional<std::uint64_t> read_kb_field(const char* path, const std::string& key) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key, 0) != 0 || line.size() <= key.size() || line[key.size()] != ':') continue;
    std::istringstream fields(line.substr(key.size() + 1));
    std::uint64_t kb = 0;
    if (fields >> kb) return kb * 1024;
  }
  return std::nullopt;
}

}  // namespace

std::uint64_t default_memory_cap() {
  std::optional<std::uint64_t> avail = read_kb_field("/proc/meminfo", "MemAvailable");
  if (!avail) {
    const long pages = sysconf(_SC_PHYS_PAGES);
    const long page_size = sysconf(_SC_PAGE_SIZE);
    if (pages > 0 && page_size > 0) {
      avail = static_cast<std::uint64_t>(pages) * static_cast<std::uint64_t>(page_size);
    }
  }
  if (!avail) return std::uint64_t{1} << 32;
  return *avail / 4 * 3;
}

std::optional<std::uint64_t> current_rss_bytes() { return read_kb_field("/proc/self/status", "VmRSS"); }

std::optional<std::uint64_t> peak_rss_bytes() { return read_kb_field("/proc/self/status", "VmHWM"); }

bool reset_peak_rss() {
  std::ofstream out("/proc/self/clear_refs");
  if (!out) return false;
  out << "5";
  out.flush();
  return static_cast<bool>(out);
}

}  // namespace qmc::memory
