// Parsing of list and range arguments such as "2..10", "100,250,500" and
// "1.05..3:0.05".
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsacli {

// Comma-separated items, each an integer or "a..b" or "a..b:step".
// Throws std::invalid_argument naming `flag` on malformed input.
std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& flag);

// Same syntax with real numbers; a range includes b when it lies on the grid
// within rounding.
std::vector<double> parse_real_list(const std::string& text, const std::string& flag);

std::vector<std::string> split(const std::string& text, char sep);

} // namespace qsacli
