#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small text helpers shared by the file readers and writers.
namespace fuzzyest::text {

std::string_view trim(std::string_view s) noexcept;
std::vector<std::string_view> split(std::string_view s, char sep);
std::string lower(std::string_view s);

/// Whole-string parse; rejects trailing junk, NaN and infinities.
std::optional<double> parse_double(std::string_view s) noexcept;

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

}  // namespace fuzzyest::text
