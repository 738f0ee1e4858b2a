#include "fuzzyest/linguistic_variable.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "fuzzyest/errors.hpp"

namespace fuzzyest {

namespace {

// Coverage is checked on this many evenly spaced points plus every term peak.
constexpr std::size_t kCoverageScanPoints = 2001;

}  // namespace

LinguisticVariable::LinguisticVariable(std::string name, Interval universe, std::vector<Term> terms)
    : name_(std::move(name)), universe_(universe), terms_(std::move(terms)) {
  if (!std::isfinite(universe_.lo) || !std::isfinite(universe_.hi) || !(universe_.lo < universe_.hi)) {
    throw ValidationError(
        fmt::format("variable '{}': universe [{}, {}] must satisfy lo < hi", name_, universe_.lo, universe_.hi));
  }
  if (terms_.empty()) {
    throw ValidationError(fmt::format("variable '{}' has no terms", name_));
  }
  std::set<std::string_view> seen;
  for (const auto& t : terms_) {
    if (t.name.empty()) throw ValidationError(fmt::format("variable '{}' has an unnamed term", name_));
    if (!seen.insert(t.name).second) {
      throw ValidationError(fmt::format("variable '{}': duplicate term name '{}'", name_, t.name));
    }
  }
}

void LinguisticVariable::check_coverage() const {
  std::vector<double> probes;
  probes.reserve(kCoverageScanPoints + terms_.size());
  for (std::size_t i = 0; i < kCoverageScanPoints; ++i) {
    probes.push_back(universe_.lo + universe_.width() * static_cast<double>(i) / (kCoverageScanPoints - 1));
  }
  for (const auto& t : terms_) {
    if (universe_.contains(t.mf.peak())) probes.push_back(t.mf.peak());
  }
  for (double x : probes) {
    const bool covered = std::any_of(terms_.begin(), terms_.end(), [x](const Term& t) { return t.mf(x) > 0.0; });
    if (!covered) {
      throw ValidationError(fmt::format("variable '{}': no term covers x = {}", name_, x));
    }
  }
}

std::optional<std::size_t> LinguisticVariable::find(std::string_view term_name) const noexcept {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].name == term_name) return i;
  }
  return std::nullopt;
}

const Term& LinguisticVariable::term(std::string_view term_name) const {
  if (auto i = find(term_name)) return terms_[*i];
  throw ValidationError(fmt::format("variable '{}' has no term '{}'", name_, term_name));
}

double LinguisticVariable::clamp(double x) const {
  const double band = kClampTolerance * universe_.width();
  if (std::isnan(x) || x < universe_.lo - band || x > universe_.hi + band) {
    throw OutOfRangeError(name_, x, universe_.lo, universe_.hi);
  }
  return std::clamp(x, universe_.lo, universe_.hi);
}

std::vector<double> LinguisticVariable::degrees(double x) const {
  const double v = clamp(x);
  std::vector<double> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.mf(v));
  return out;
}

std::map<std::string, double> fuzzify(const LinguisticVariable& var, double x) {
  const auto d = var.degrees(x);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < d.size(); ++i) out.emplace(var.terms()[i].name, d[i]);
  return out;
}

std::string_view to_string(PartitionShape shape) noexcept {
  return shape == PartitionShape::triangular ? "triangular" : "gaussian";
}

PartitionShape partition_shape_from_string(std::string_view name) {
  if (name == "triangular" || name == "tmf") return PartitionShape::triangular;
  if (name == "gaussian" || name == "gmf") return PartitionShape::gaussian;
  throw ParseError(0, fmt::format("unknown partition shape '{}' (expected triangular or gaussian)", name));
}

std::vector<std::string> ordinal_term_names(std::string_view prefix, std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(fmt::format("{}{}", prefix, i));
  return names;
}

LinguisticVariable make_partition(std::string name, Interval universe, std::size_t n, PartitionShape shape,
                                  std::vector<std::string> term_names) {
  if (n < 2) {
    throw InvalidPartitionError(fmt::format("partition of '{}' needs at least 2 terms, got {}", name, n));
  }
  if (!(universe.lo < universe.hi)) {
    throw InvalidPartitionError(
        fmt::format("partition of '{}': empty universe [{}, {}]", name, universe.lo, universe.hi));
  }
  if (term_names.empty()) term_names = ordinal_term_names("s", n);
  if (term_names.size() != n) {
    throw InvalidPartitionError(fmt::format("partition of '{}': {} names for {} terms", name, term_names.size(), n));
  }

  const double spacing = universe.width() / static_cast<double>(n - 1);
  // Half-maximum crossing at the midpoint between neighbouring centres.
  const double sigma = spacing / (2.0 * std::sqrt(2.0 * std::log(2.0)));

  std::vector<Term> terms;
  terms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // The last centre is pinned to hi so rounding never leaves it short.
    const double c = (i + 1 == n) ? universe.hi : universe.lo + spacing * static_cast<double>(i);
    auto mf = shape == PartitionShape::triangular ? MembershipFunction::triangular(c - spacing, c, c + spacing)
                                                  : MembershipFunction::gaussian(c, sigma);
    terms.push_back({std::move(term_names[i]), mf});
  }
  return {std::move(name), universe, std::move(terms)};
}

}  // namespace fuzzyest
