#include "qmc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "qmc/errors.hpp"
#include "qmc/memory.hpp"
#include "qmc/oracle.hpp"
#include "qmc/sparse.hpp"

namespace qmc::bench {

Engine parse_engine(std::string_view name) {
  if (name == "dense") return Engine::Dense;
  if (name == "sparse") return Engine::Sparse;
  if (name == "oracle") return Engine::Oracle;
  throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

std::string_view engine_name(Engine engine) {
  switch (engine) {
    case Engine::Dense: return "dense";
    case Engine::Sparse: return "sparse";
    case Engine::Oracle: return "oracle";
  }
  return "dense";
}

std::vector<TernaryString> find_primes(Engine engine, const TruthTable& tt, const dense::DenseOptions& options) {
  switch (engine) {
    case Engine::Dense: return dense::find_primes(tt, options);
    case Engine::Sparse: return sparse::find_primes(tt);
    case Engine::Oracle: return oracle::primes(tt);
  }
  throw std::invalid_argument("unknown engine");
}

TruthTable materialize(const FunctionSpec& spec) {
  if (const auto* file = std::get_if<FileSource>(&spec.source)) return io::read_file(file->path, file->format, file->n);
  const auto& r = std::get<RandomSource>(spec.source);
  return random_function(r.n, r.density, r.seed, r.sampling);
}

BenchReport run_benchmark(const FunctionSpec& spec, Engine engine, int repetitions,
                          const dense::DenseOptions& options) {
  const TruthTable tt = materialize(spec);
  std::uint64_t seed = 0;
  if (const auto* r = std::get_if<RandomSource>(&spec.source)) seed = r->seed;
  BenchReport report = run_benchmark(tt, seed, engine, repetitions, options);
  if (const auto* r = std::get_if<RandomSource>(&spec.source)) report.density = r->density;
  return report;
}

BenchReport run_benchmark(const TruthTable& tt, std::uint64_t seed, Engine engine, int repetitions,
                          const dense::DenseOptions& options) {
  using Clock = std::chrono::steady_clock;
  BenchReport report;
  report.engine = std::string(engine_name(engine));
  report.n = tt.num_vars();
  report.density = tt.density();
  report.seed = seed;
  repetitions = std::max(1, repetitions);

  double best = 0.0;
  for (int rep = 0; rep < repetitions; ++rep) {
    const bool rss_reset = memory::reset_peak_rss();
    const auto rss_base = memory::current_rss_bytes();
    const std::uint64_t heap_base = memory::allocated_bytes();
    memory::reset_peak_allocated();
    const auto start = Clock::now();
    try {
      const auto primes = find_primes(engine, tt, options);
      const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
      report.prime_count = primes.size();
      best = rep == 0 ? seconds : std::min(best, seconds);
    } catch (const ResourceError& e) {
      report.ok = false;
      report.error = e.what();
    } catch (const GuardError& e) {
      report.ok = false;
      report.error = e.what();
    }
    report.peak_bytes = std::max(report.peak_bytes, memory::peak_allocated_bytes() - heap_base);
    const auto rss_peak = memory::peak_rss_bytes();
    if (rss_reset && rss_base && rss_peak) {
      const std::uint64_t grew = *rss_peak > *rss_base ? *rss_peak - *rss_base : 0;
      report.peak_rss_bytes = std::max(report.peak_rss_bytes.value_or(0), grew);
    }
    if (!report.ok) break;
  }
  report.seconds = report.ok ? best : 0.0;
  return report;
}

std::string to_json_line(const BenchReport& r) {
  nlohmann::json j = {
      {"engine", r.engine},
      {"n", r.n},
      {"density", r.density},
      {"seed", r.seed},
      {"seconds", r.seconds},
      {"peak_bytes", r.peak_bytes},
      {"peak_rss_bytes", r.peak_rss_bytes ? nlohmann::json(*r.peak_rss_bytes) : nlohmann::json(nullptr)},
      {"prime_count", r.prime_count},
      {"ok", r.ok},
  };
  if (!r.ok) j["error"] = r.error;
  return j.dump();
}

BenchReport from_json_line(std::string_view line) {
  const auto j = nlohmann::json::parse(line);
  BenchReport r;
  r.engine = j.at("engine").get<std::string>();
  r.n = j.at("n").get<int>();
  r.density = j.at("density").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.seconds = j.at("seconds").get<double>();
  r.peak_bytes = j.at("peak_bytes").get<std::uint64_t>();
  if (!j.at("peak_rss_bytes").is_null()) r.peak_rss_bytes = j.at("peak_rss_bytes").get<std::uint64_t>();
  r.prime_count = j.at("prime_count").get<std::uint64_t>();
  r.ok = j.at("ok").get<bool>();
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  return r;
}

std::string format_table(const std::vector<BenchReport>& reports) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-7s %3s %8s %20s %10s %12s %12s %12s\n", "engine", "n", "density", "seed", "time[s]",
                "heap[MiB]", "rss[MiB]", "primes");
  out += buf;
  for (const auto& r : reports) {
    if (!r.ok) {
      std::snprintf(buf, sizeof buf, "%-7s %3d %8.3f %20llu  FAILED: %s\n", r.engine.c_str(), r.n, r.density,
                    static_cast<unsigned long long>(r.seed), r.error.c_str());
      out += buf;
      continue;
    }
    const double mib = 1024.0 * 1024.0;
    std::snprintf(buf, sizeof buf, "%-7s %3d %8.3f %20llu %10.4f %12.1f %12s %12llu\n", r.engine.c_str(), r.n,
                  r.density, static_cast<unsigned long long>(r.seed), r.seconds,
                  static_cast<double>(r.peak_bytes) / mib,
                  r.peak_rss_bytes ? std::to_string(static_cast<long long>(static_cast<double>(*r.peak_rss_bytes) / mib)).c_str()
                                   : "-",
                  static_cast<unsigned long long>(r.prime_count));
    out += buf;
  }
  return out;
}

}  // namespace qmc::bench
