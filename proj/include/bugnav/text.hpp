#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bugnav {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace bugnav
