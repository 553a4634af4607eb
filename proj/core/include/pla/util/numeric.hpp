#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace pla {

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
// Whole-string parse; none on any trailing garbage.
std::optional<double> parse_double(std::string_view text);

// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

}  // namespace pla
