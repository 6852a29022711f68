#include "qmc/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qmc/errors.hpp"

namespace qmc::io {
namespace {

struct Located {
  char c;
  std::size_t line;
  std::size_t column;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// Non-whitespace characters with their 1-based positions.
std::vector<Located> significant_chars(std::string_view text) {
  std::vector<Located> out;
  std::size_t line = 1;
  std::size_t column = 1;
  for (char c : text) {
    if (c == '\n') {
      ++line;
      column = 1;
      continue;
    }
    if (!is_space(c)) out.push_back({c, line, column});
    ++column;
  }
  return out;
}

int log2_exact(std::uint64_t v) { return std::has_single_bit(v) ? std::countr_zero(v) : -1; }

TruthTable make_table(int n, std::size_t line) {
  if (n < 1 || n > kMaxVars) throw ParseError("variable count must be in [1, 31], got " + std::to_string(n), line, 1);
  return TruthTable(n);
}

TruthTable parse_bits(std::string_view text, std::optional<int> declared) {
  const auto chars = significant_chars(text);
  const int n = log2_exact(chars.size());
  if (n < 1) {
    throw ParseError("BITS input has " + std::to_string(chars.size()) + " digits; expected a power of two >= 2", 0, 0);
  }
  if (declared && *declared != n) {
    throw ParseError("BITS input has 2^" + std::to_string(n) + " digits but n=" + std::to_string(*declared) +
                         " was declared",
                     0, 0);
  }
  TruthTable tt = make_table(n, 0);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const Located& ch = chars[i];
    if (ch.c != '0' && ch.c != '1') {
      throw ParseError("invalid BITS character '" + std::string(1, ch.c) + "'", ch.line, ch.column);
    }
    if (ch.c == '1') tt.set(static_cast<Point>(i));
  }
  return tt;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

TruthTable parse_hex(std::string_view text, std::optional<int> declared) {
  const auto chars = significant_chars(text);
  int n = log2_exact(chars.size() * 4);
  if (declared && *declared == 1 && chars.size() == 1) n = 1;
  if (n < 1) {
    throw ParseError("HEX input has " + std::to_string(chars.size()) + " digits; expected 2^n/4 digits", 0, 0);
  }
  if (declared && *declared != n) {
    throw ParseError("HEX input encodes n=" + std::to_string(n) + " but n=" + std::to_string(*declared) +
                         " was declared",
                     0, 0);
  }
  TruthTable tt = make_table(n, 0);
  const std::size_t digits = chars.size();
  for (std::size_t p = 0; p < digits; ++p) {
    const Located& ch = chars[p];
    const int v = hex_value(ch.c);
    if (v < 0) throw ParseError("invalid HEX digit '" + std::string(1, ch.c) + "'", ch.line, ch.column);
    const std::uint64_t base = 4 * (digits - 1 - p);
    for (int j = 0; j < 4; ++j) {
      if (!((v >> j) & 1)) continue;
      if (base + static_cast<std::uint64_t>(j) >= tt.num_points()) {
        throw ParseError("HEX digit sets a point beyond 2^n", ch.line, ch.column);
      }
      tt.set(static_cast<Point>(base + static_cast<std::uint64_t>(j)));
    }
  }
  return tt;
}

struct Line {
  std::string_view text;  // comment stripped, trimmed
  std::size_t number;
  std::size_t column;  // 1-based column of text[0]
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t b = 0;
    while (b < line.size() && is_space(line[b])) ++b;
    std::size_t e = line.size();
    while (e > b && is_space(line[e - 1])) --e;
    if (e > b) out.push_back({line.substr(b, e - b), number, b + 1});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t b = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

int parse_count(std::string_view token, const Line& line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected an integer, got '" + std::string(token) + "'", line.number, line.column);
  }
  return v;
}

// Handles ".i N"; returns true if the line was that directive.
bool read_input_count(const Line& line, std::optional<int>& n) {
  const auto tokens = split_ws(line.text);
  if (tokens.empty() || tokens[0] != ".i") return false;
  if (tokens.size() != 2) throw ParseError("expected '.i N'", line.number, line.column);
  const int declared = parse_count(tokens[1], line);
  if (n && *n != declared) {
    throw ParseError(".i " + std::to_string(declared) + " conflicts with n=" + std::to_string(*n), line.number,
                     line.column);
  }
  if (declared < 1 || declared > kMaxVars) {
    throw ParseError("variable count must be in [1, 31], got " + std::to_string(declared), line.number, line.column);
  }
  n = declared;
  return true;
}

TruthTable parse_minterms(std::string_view text, std::optional<int> n) {
  const auto lines = content_lines(text);
  struct Pending {
    std::uint64_t index;
    const Line* line;
  };
  std::vector<Point> points;
  std::vector<Pending> decimal;
  bool seen_entry = false;
  for (const Line& line : lines) {
    if (line.text[0] == '.') {
      if (seen_entry) throw ParseError("'.i' must precede all minterms", line.number, line.column);
      if (!read_input_count(line, n)) throw ParseError("unknown directive", line.number, line.column);
      continue;
    }
    seen_entry = true;
    const std::string_view token = line.text;
    if (split_ws(token).size() != 1) throw ParseError("expected one minterm per line", line.number, line.column);
    const bool binary_chars = std::all_of(token.begin(), token.end(), [](char c) { return c == '0' || c == '1'; });
    if (binary_chars && (!n || token.size() == static_cast<std::size_t>(*n))) {
      if (!n) {
        if (token.size() > static_cast<std::size_t>(kMaxVars)) {
          throw ParseError("minterm longer than 31 variables", line.number, line.column);
        }
        n = static_cast<int>(token.size());
      }
      Point x = 0;
      for (std::size_t k = 0; k < token.size(); ++k) {
        if (token[k] == '1') x |= Point{1} << k;
      }
      points.push_back(x);
      continue;
    }
    std::uint64_t index = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      const std::size_t bad = static_cast<std::size_t>(ptr - token.data());
      throw ParseError("invalid minterm '" + std::string(token) + "'", line.number, line.column + bad);
    }
    decimal.push_back({index, &line});
  }
  if (!n) throw ParseError("cannot determine n: add a '.i N' line or binary minterms", 0, 0);
  TruthTable tt = make_table(*n, 0);
  for (Point x : points) tt.set(x);
  for (const Pending& d : decimal) {
    if (d.index >= tt.num_points()) {
      throw ParseError("minterm index " + std::to_string(d.index) + " is out of range for n=" + std::to_string(*n),
                       d.line->number, d.line->column);
    }
    tt.set(static_cast<Point>(d.index));
  }
  return tt;
}

TruthTable parse_pla(std::string_view text, std::optional<int> n) {
  const auto lines = content_lines(text);
  std::optional<TruthTable> tt;
  bool ended = false;
  for (const Line& line : lines) {
    if (ended) throw ParseError("content after '.e'", line.number, line.column);
    const auto tokens = split_ws(line.text);
    if (tokens[0][0] == '.') {
      if (tokens[0] == ".i") {
        if (tt) throw ParseError("'.i' must precede all cubes", line.number, line.column);
        read_input_count(line, n);
        continue;
      }
      if (tokens[0] == ".o") {
        if (tokens.size() != 2 || tokens[1] != "1") {
          throw ParseError("only single-output PLA files are supported", line.number, line.column);
        }
        continue;
      }
      if (tokens[0] == ".p") {
        if (tokens.size() != 2) throw ParseError("expected '.p K'", line.number, line.column);
        parse_count(tokens[1], line);
        continue;
      }
      if (tokens[0] == ".e" || tokens[0] == ".end") {
        ended = true;
        continue;
      }
      throw ParseError("unsupported directive '" + std::string(tokens[0]) + "'", line.number, line.column);
    }
    if (!n) throw ParseError("cube before '.i N'", line.number, line.column);
    if (!tt) tt.emplace(*n);
    if (tokens.size() != 2) throw ParseError("expected '<inputs> <output>'", line.number, line.column);
    const std::string_view inputs = tokens[0];
    if (inputs.size() != static_cast<std::size_t>(*n)) {
      throw ParseError("cube has " + std::to_string(inputs.size()) + " inputs, expected " + std::to_string(*n),
                       line.number, line.column);
    }
    if (tokens[1] != "1") {
      const auto col = static_cast<std::size_t>(tokens[1].data() - line.text.data()) + line.column;
      throw ParseError("output must be '1'", line.number, col);
    }
    Point ones = 0;
    Point free = 0;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      switch (inputs[k]) {
        case '0': break;
        case '1': ones |= Point{1} << k; break;
        case '-': free |= Point{1} << k; break;
        default:
          throw ParseError("invalid input character '" + std::string(1, inputs[k]) + "'", line.number,
                           line.column + k);
      }
    }
    Point sub = 0;
    do {
      tt->set(ones | sub);
      sub = (sub - free) & free;
    } while (sub != 0);
  }
  if (!n) throw ParseError("missing '.i N'", 0, 0);
  if (!tt) tt.emplace(*n);
  return *std::move(tt);
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "bits") return Format::Bits;
  if (name == "hex") return Format::Hex;
  if (name == "minterms") return Format::Minterms;
  if (name == "pla" || name == "pla-lite") return Format::Pla;
  throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

std::string_view format_name(Format format) {
  switch (format) {
    case Format::Bits: return "bits";
    case Format::Hex: return "hex";
    case Format::Minterms: return "minterms";
    case Format::Pla: return "pla";
  }
  return "bits";
}

std::optional<Format> format_from_extension(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".bits") return Format::Bits;
  if (ext == ".hex") return Format::Hex;
  if (ext == ".min" || ext == ".minterms") return Format::Minterms;
  if (ext == ".pla") return Format::Pla;
  return std::nullopt;
}

TruthTable parse(std::string_view text, Format format, std::optional<int> n) {
  switch (format) {
    case Format::Bits: return parse_bits(text, n);
    case Format::Hex: return parse_hex(text, n);
    case Format::Minterms: return parse_minterms(text, n);
    case Format::Pla: return parse_pla(text, n);
  }
  throw std::invalid_argument("unknown format");
}

std::string write(const TruthTable& tt, Format format) {
  const int n = tt.num_vars();
  std::string out;
  switch (format) {
    case Format::Bits: {
      out.resize(static_cast<std::size_t>(tt.num_points()));
      for (std::uint64_t i = 0; i < tt.num_points(); ++i) out[i] = tt.test(static_cast<Point>(i)) ? '1' : '0';
      out += '\n';
      break;
    }
    case Format::Hex: {
      static constexpr char kDigits[] = "0123456789abcdef";
      const std::uint64_t digits = std::max<std::uint64_t>(1, tt.num_points() / 4);
      out.resize(static_cast<std::size_t>(digits));
      for (std::uint64_t d = 0; d < digits; ++d) {
        int v = 0;
        for (int j = 0; j < 4; ++j) {
          const std::uint64_t x = 4 * d + static_cast<std::uint64_t>(j);
          if (x < tt.num_points() && tt.test(static_cast<Point>(x))) v |= 1 << j;
        }
        out[static_cast<std::size_t>(digits - 1 - d)] = kDigits[v];
      }
      out += '\n';
      break;
    }
    case Format::Minterms:
    case Format::Pla: {
      const auto support = tt.support();
      const bool pla = format == Format::Pla;
      out += ".i " + std::to_string(n) + "\n";
      if (pla) out += ".o 1\n.p " + std::to_string(support.size()) + "\n";
      std::string row(static_cast<std::size_t>(n), '0');
      for (Point x : support) {
        for (int k = 0; k < n; ++k) row[static_cast<std::size_t>(k)] = ((x >> k) & 1u) ? '1' : '0';
        out += row;
        out += pla ? " 1\n" : "\n";
      }
      if (pla) out += ".e\n";
      break;
    }
  }
  return out;
}

TruthTable read_file(const std::filesystem::path& path, Format format, std::optional<int> n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), format, n);
}

void write_file(const std::filesystem::path& path, const TruthTable& tt, Format format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << write(tt, format);
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace qmc::io
