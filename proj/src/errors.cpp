#include "fuzzyest/errors.hpp"

#include <fmt/format.h>

namespace fuzzyest {

OutOfRangeError::OutOfRangeError(std::string variable, double value, double lo, double hi)
    : Error(fmt::format("{} = {} is outside [{}, {}] beyond the clamp tolerance", variable, value, lo, hi)),
      variable_(std::move(variable)),
      value_(value) {}

namespace {

std::string describe_inputs(const std::map<std::string, double>& inputs) {
  std::string s;
  for (const auto& [k, v] : inputs) {
    if (!s.empty()) s += ", ";
    s += fmt::format("{}={}", k, v);
  }
  return s;
}

}  // namespace

NoRuleFiredError::NoRuleFiredError(std::string subsystem, std::map<std::string, double> inputs)
    : Error(fmt::format("no rule fired in '{}'{}", subsystem,
                        inputs.empty() ? std::string{} : " for " + describe_inputs(inputs))),
      subsystem_(std::move(subsystem)),
      inputs_(std::move(inputs)) {}

InvalidRatingError::InvalidRatingError(std::string driver, std::string level)
    : Error(fmt::format("rating '{}' is not defined for cost driver {}", level, driver)), driver_(std::move(driver)) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(line == 0 ? what : fmt::format("line {}: {}", line, what)), line_(line) {}

}  // namespace fuzzyest
