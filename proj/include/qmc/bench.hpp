#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qmc/dense.hpp"
#include "qmc/io.hpp"
#include "qmc/random.hpp"
#include "qmc/ternary.hpp"
#include "qmc/truth_table.hpp"

namespace qmc::bench {

enum class Engine { Dense, Sparse, Oracle };

/// "dense", "sparse", "oracle". Throws std::invalid_argument otherwise.
Engine parse_engine(std::string_view name);
std::string_view engine_name(Engine engine);

/// Runs one engine end to end; output in increasing rank order.
std::vector<TernaryString> find_primes(Engine engine, const TruthTable& tt, const dense::DenseOptions& options = {});

struct FileSource {
  std::filesystem::path path;
  io::Format format = io::Format::Bits;
  std::optional<int> n;
};

struct RandomSource {
  int n = 0;
  double density = 0.5;
  std::uint64_t seed = 0;
  Sampling sampling = Sampling::Bernoulli;
};

struct FunctionSpec {
  std::variant<FileSource, RandomSource> source;
};

TruthTable materialize(const FunctionSpec& spec);

struct BenchReport {
  std::string engine;
  int n = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  /// Fastest repetition, engine call only (no input parsing or generation).
  double seconds = 0.0;
  /// Peak heap growth during the engine call, from allocator accounting.
  std::uint64_t peak_bytes = 0;
  /// Peak resident-set growth, when the OS exposes it.
  std::optional<std::uint64_t> peak_rss_bytes;
  std::uint64_t prime_count = 0;
  bool ok = true;
  std::string error;
};

/// Runs `engine` on the specified function `repetitions` times. Engine
/// failures (resource limits, oracle guards) produce a row with ok = false.
BenchReport run_benchmark(const FunctionSpec& spec, Engine engine, int repetitions = 1,
                          const dense::DenseOptions& options = {});

/// Same, on an already materialized table.
BenchReport run_benchmark(const TruthTable& tt, std::uint64_t seed, Engine engine, int repetitions = 1,
                          const dense::DenseOptions& options = {});

/// One JSON object on a single line: engine, n, density, seed, seconds,
/// peak_bytes, peak_rss_bytes, prime_count, ok, error.
std::string to_json_line(const BenchReport& report);

/// Parses a line produced by to_json_line.
BenchReport from_json_line(std::string_view line);

/// Fixed-width human-readable table.
std::string format_table(const std::vector<BenchReport>& reports);

}  // namespace qmc::bench
