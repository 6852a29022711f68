#pragma once

// Truth-table file formats.
//
//   BITS      2^n characters '0'/'1'; character i is f(point i).
//   HEX       2^n/4 hex digits, most significant first: the last digit holds
//             points 0..3 (bit j of a digit is the lowest of its 4 points + j).
//   MINTERMS  optional ".i N" line, then one support point per line, either
//             as N binary characters (x_1 first) or as a decimal index. A
//             token of only '0'/'1' is binary when N is unknown or the token
//             has exactly N characters; otherwise it is decimal.
//   PLA-LITE  ".i N", optional ".o 1" and ".p K", cube lines "<inputs> 1"
//             with inputs over {0,1,-} (x_1 first), optional ".e".
//
// Whitespace is ignored in BITS/HEX; '#' starts a comment in MINTERMS/PLA.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qmc/truth_table.hpp"

namespace qmc::io {

enum class Format { Bits, Hex, Minterms, Pla };

/// "bits", "hex", "minterms", "pla". Throws std::invalid_argument otherwise.
Format parse_format(std::string_view name);
std::string_view format_name(Format format);

/// .bits, .hex, .min/.minterms, .pla
std::optional<Format> format_from_extension(const std::filesystem::path& path);

/// Throws ParseError. When n is given, the input must agree with it.
TruthTable parse(std::string_view text, Format format, std::optional<int> n = std::nullopt);

std::string write(const TruthTable& tt, Format format);

TruthTable read_file(const std::filesystem::path& path, Format format, std::optional<int> n = std::nullopt);
void write_file(const std::filesystem::path& path, const TruthTable& tt, Format format);

}  // namespace qmc::io
