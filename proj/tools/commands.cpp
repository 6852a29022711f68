#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "qmc/bench.hpp"
#include "qmc/errors.hpp"
#include "qmc/io.hpp"
#include "qmc/random.hpp"

namespace qmc::cli {
namespace {

struct Config {
  std::string algo = "dense";
  std::string against = "oracle";
  int n = 0;
  int n_max = 0;
  double density = 0.5;
  std::uint64_t seed = 0;
  std::string input;
  std::string format;
  std::string output;
  int h = 0;
  char wildcard = '*';
  std::uint64_t mem_cap = 0;
  std::string unroll = "on";
  std::string fuse = "on";
  std::string sampling = "bernoulli";
  int reps = 1;
  int count = 1;
  bool inject_fault = false;
};

// Options whose presence decides the input source.
struct SourceFlags {
  CLI::Option* input = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* density = nullptr;
  CLI::Option* seed = nullptr;

  bool from_file() const { return input != nullptr && input->count() > 0; }
  bool random_flags() const { return density->count() > 0 || seed->count() > 0; }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SourceFlags add_source_options(CLI::App* app, Config& c, bool with_file) {
  SourceFlags f;
  if (with_file) {
    f.input = app->add_option("--input", c.input, "Truth-table file");
    app->add_option("--format", c.format, "bits | hex | minterms | pla (default: from extension, else bits)")
        ->check(CLI::IsMember({"bits", "hex", "minterms", "pla"}));
  }
  f.n = app->add_option("--n", c.n, "Variable count (random input, or cross-check for --input)")
            ->check(CLI::Range(1, kMaxVars));
  f.density = app->add_option("--density", c.density, "Support density of the random function")
                  ->check(CLI::Range(0.0, 1.0));
  f.seed = app->add_option("--seed", c.seed, "Seed of the random function");
  app->add_option("--sampling", c.sampling, "bernoulli | exact")->check(CLI::IsMember({"bernoulli", "exact"}));
  return f;
}

void add_engine_options(CLI::App* app, Config& c) {
  app->add_option("--algo", c.algo, "dense | sparse | oracle")->check(CLI::IsMember({"dense", "sparse", "oracle"}));
  app->add_option("--h", c.h, "Bottom-layer dimensions of the dense engine")->check(CLI::Range(1, dense::kMaxBottomDims));
  app->add_option("--mem-cap", c.mem_cap, "Dense state memory cap in bytes (default: 75% of available memory)")
      ->transform(CLI::AsSizeValue(false));
  app->add_option("--unroll", c.unroll, "on | off")->check(CLI::IsMember({"on", "off"}));
  app->add_option("--fuse", c.fuse, "on | off")->check(CLI::IsMember({"on", "off"}));
}

dense::DenseOptions dense_options(const Config& c) {
  dense::DenseOptions o;
  o.bottom_dims = c.h;
  o.unroll = c.unroll == "on";
  o.fuse = c.fuse == "on";
  o.mem_cap = c.mem_cap;
  return o;
}

Sampling sampling_of(const Config& c) { return c.sampling == "exact" ? Sampling::ExactCount : Sampling::Bernoulli; }

bench::FunctionSpec function_spec(const Config& c, const SourceFlags& f, std::uint64_t seed) {
  if (f.from_file()) {
    if (f.random_flags()) throw UsageError("--input cannot be combined with --density or --seed");
    io::Format format = io::Format::Bits;
    if (!c.format.empty()) {
      format = io::parse_format(c.format);
    } else if (const auto ext = io::format_from_extension(c.input)) {
      format = *ext;
    }
    std::optional<int> n;
    if (f.n->count() > 0) n = c.n;
    return {bench::FileSource{c.input, format, n}};
  }
  if (f.n->count() == 0) throw UsageError("an input source is required: --input PATH or --n N [--density D --seed S]");
  return {bench::RandomSource{c.n, c.density, seed, sampling_of(c)}};
}

std::vector<TernaryString> output_order(std::vector<TernaryString> primes) {
  std::vector<std::pair<Rank, TernaryString>> keyed;
  keyed.reserve(primes.size());
  for (auto& s : primes) keyed.emplace_back(rank(s), s);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.second.weight() != b.second.weight()) return a.second.weight() > b.second.weight();
    return a.first < b.first;
  });
  primes.clear();
  for (auto& [r, s] : keyed) primes.push_back(s);
  return primes;
}

// Writes to --output when given, else to `out`.
template <class F>
void emit(const Config& c, std::ostream& out, F&& write) {
  if (c.output.empty()) {
    write(out);
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + c.output + "'");
  write(file);
}

int cmd_primes(const Config& c, const SourceFlags& f, std::ostream& out) {
  const TruthTable tt = bench::materialize(function_spec(c, f, c.seed));
  const auto primes = output_order(bench::find_primes(bench::parse_engine(c.algo), tt, dense_options(c)));
  emit(c, out, [&](std::ostream& os) {
    for (const auto& s : primes) os << s.to_string(c.wildcard) << '\n';
  });
  return kOk;
}

void print_sample(std::ostream& err, std::string_view label, const std::vector<TernaryString>& items, char wildcard) {
  err << "  only in " << label << ": " << items.size();
  const std::size_t shown = std::min<std::size_t>(items.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) err << (i == 0 ? " [" : ", ") << items[i].to_string(wildcard);
  if (shown > 0) err << (shown < items.size() ? ", ...]" : "]");
  err << '\n';
}

int cmd_verify(const Config& c, const SourceFlags& f, std::ostream& out, std::ostream& err) {
  const bench::Engine first = bench::parse_engine(c.algo);
  const bench::Engine second = bench::parse_engine(c.against);
  if (c.count > 1 && f.from_file()) throw UsageError("--count applies to random inputs only");
  int failures = 0;
  for (int i = 0; i < c.count; ++i) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(i);
    const TruthTable tt = bench::materialize(function_spec(c, f, seed));
    auto a = bench::find_primes(first, tt, dense_options(c));
    const auto b = bench::find_primes(second, tt, dense_options(c));
    if (c.inject_fault) {
      if (a.empty()) {
        a.push_back(TernaryString::from_masks(tt.num_vars(), 0, 0));
      } else {
        a.erase(a.begin());
      }
    }
    std::vector<TernaryString> only_a;
    std::vector<TernaryString> only_b;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a), RankLess{});
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b), RankLess{});
    if (only_a.empty() && only_b.empty()) continue;
    ++failures;
    err << "mismatch (n=" << tt.num_vars() << ", seed=" << seed << "): " << c.algo << " " << a.size() << " primes, "
        << c.against << " " << b.size() << " primes\n";
    print_sample(err, c.algo, only_a, c.wildcard);
    print_sample(err, c.against, only_b, c.wildcard);
  }
  out << (failures == 0 ? "ok" : "FAILED") << ": " << c.count - failures << "/" << c.count << " inputs agree ("
      << c.algo << " vs " << c.against << ")\n";
  return failures == 0 ? kOk : kMismatch;
}

int cmd_bench(const Config& c, const SourceFlags& f, std::ostream& out, std::ostream& err) {
  const bench::Engine engine = bench::parse_engine(c.algo);
  std::vector<bench::BenchReport> reports;
  if (f.from_file()) {
    reports.push_back(bench::run_benchmark(function_spec(c, f, c.seed), engine, c.reps, dense_options(c)));
  } else {
    const bench::FunctionSpec first = function_spec(c, f, c.seed);
    const int last = std::max(c.n, c.n_max);
    for (int n = c.n; n <= last; ++n) {
      bench::RandomSource src = std::get<bench::RandomSource>(first.source);
      src.n = n;
      reports.push_back(bench::run_benchmark(bench::FunctionSpec{src}, engine, c.reps, dense_options(c)));
    }
  }
  emit(c, out, [&](std::ostream& os) {
    for (const auto& r : reports) os << bench::to_json_line(r) << '\n';
  });
  err << bench::format_table(reports);
  const bool all_ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.ok; });
  return all_ok ? kOk : kResourceError;
}

int cmd_gen(const Config& c, const SourceFlags& f, std::ostream& out) {
  if (f.n->count() == 0) throw UsageError("gen requires --n");
  const TruthTable tt = random_function(c.n, c.density, c.seed, sampling_of(c));
  const io::Format format = c.format.empty() ? io::Format::Bits : io::parse_format(c.format);
  emit(c, out, [&](std::ostream& os) { os << io::write(tt, format); });
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"qmc: all prime implicants of a Boolean function given by its truth table"};
  app.name(args.empty() ? "qmc" : args[0]);
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  auto* primes = app.add_subcommand("primes", "Print all prime implicants, one per line");
  const SourceFlags primes_src = add_source_options(primes, c, true);
  add_engine_options(primes, c);
  primes->add_option("--output", c.output, "Output file (default: stdout)");
  primes->add_option("--wildcard-char", c.wildcard, "Wildcard glyph on output")->check(CLI::IsMember({'*', '-'}));

  auto* verify = app.add_subcommand("verify", "Check that two engines produce the same prime set");
  const SourceFlags verify_src = add_source_options(verify, c, true);
  add_engine_options(verify, c);
  verify->add_option("--against", c.against, "Second engine")->check(CLI::IsMember({"dense", "sparse", "oracle"}));
  verify->add_option("--count", c.count, "Number of random inputs (seeds seed, seed+1, ...)")->check(CLI::PositiveNumber);
  verify->add_option("--wildcard-char", c.wildcard, "Wildcard glyph in the diff")->check(CLI::IsMember({'*', '-'}));
  verify->add_flag("--inject-fault", c.inject_fault, "Corrupt the first engine's output (self-test)")->group("");

  auto* bench_cmd = app.add_subcommand("bench", "Time one engine and report one JSON record per run");
  const SourceFlags bench_src = add_source_options(bench_cmd, c, true);
  add_engine_options(bench_cmd, c);
  bench_cmd->add_option("--n-max", c.n_max, "Sweep n from --n up to this value")->check(CLI::Range(1, kMaxVars));
  bench_cmd->add_option("--reps", c.reps, "Repetitions per run; the fastest is reported")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--output", c.output, "Report file (default: stdout)");

  auto* gen = app.add_subcommand("gen", "Write a random truth table");
  const SourceFlags gen_src = add_source_options(gen, c, false);
  gen->add_option("--format", c.format, "bits | hex | minterms | pla")
      ->check(CLI::IsMember({"bits", "hex", "minterms", "pla"}));
  gen->add_option("--output", c.output, "Output file (default: stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*primes) return cmd_primes(c, primes_src, out);
    if (*verify) return cmd_verify(c, verify_src, out, err);
    if (*bench_cmd) return cmd_bench(c, bench_src, out, err);
    if (*gen) return cmd_gen(c, gen_src, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceError;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  return kParseError;
}

}  // namespace qmc::cli
