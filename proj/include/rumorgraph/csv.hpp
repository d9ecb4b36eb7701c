#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rumorgraph {

// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

// Shortest text that round-trips the double ("%.17g"-class precision).
std::string format_double(double v);

// Fixed number of decimals, for human-facing tables.
std::string format_fixed(double v, int decimals);

}  // namespace rumorgraph
