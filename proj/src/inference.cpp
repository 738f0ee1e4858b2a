#include "fuzzyest/inference.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "fuzzyest/errors.hpp"

namespace fuzzyest {

namespace {

// Per-input probes for the build-time coverage scan, in addition to the
// term peaks. Kept small so multi-input systems stay cheap to construct.
constexpr std::size_t kScanPointsPerInput = 41;

std::vector<double> scan_points(const LinguisticVariable& var) {
  std::vector<double> pts;
  const auto& u = var.universe();
  for (std::size_t i = 0; i < kScanPointsPerInput; ++i) {
    pts.push_back(u.lo + u.width() * static_cast<double>(i) / (kScanPointsPerInput - 1));
  }
  for (const auto& t : var.terms()) {
    if (u.contains(t.mf.peak())) pts.push_back(t.mf.peak());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

std::string_view to_string(AndOperator) noexcept { return "min"; }
std::string_view to_string(Implication) noexcept { return "min"; }
std::string_view to_string(Aggregation) noexcept { return "max"; }
std::string_view to_string(Defuzzifier) noexcept { return "centroid"; }

Operators operators_from_strings(std::string_view conjunction, std::string_view implication,
                                 std::string_view aggregation, std::string_view defuzzifier) {
  const auto expect = [](std::string_view what, std::string_view got, std::string_view supported) {
    if (got != supported) {
      throw ParseError(0, fmt::format("unsupported {} operator '{}' (only '{}' is implemented)", what, got, supported));
    }
  };
  expect("and", conjunction, "min");
  expect("implication", implication, "min");
  expect("aggregation", aggregation, "max");
  expect("defuzzification", defuzzifier, "centroid");
  return {};
}

double defuzz_centroid(std::span<const double> samples, Interval universe) {
  if (samples.size() < kMinDefuzzResolution) {
    throw DomainError(
        fmt::format("defuzzification needs at least {} samples, got {}", kMinDefuzzResolution, samples.size()));
  }
  const double step = universe.width() / static_cast<double>(samples.size() - 1);
  double mass = 0.0;
  double moment = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = universe.lo + step * static_cast<double>(i);
    mass += samples[i];
    moment += x * samples[i];
  }
  if (!(mass > 0.0)) throw NoRuleFiredError("centroid", {});
  return std::clamp(moment / mass, universe.lo, universe.hi);
}

FuzzyInferenceSystem::FuzzyInferenceSystem(std::string name, std::vector<LinguisticVariable> inputs,
                                           LinguisticVariable output, std::vector<Rule> rules, Operators ops,
                                           std::size_t resolution)
    : name_(std::move(name)),
      inputs_(std::move(inputs)),
      output_(std::move(output)),
      rules_(std::move(rules)),
      ops_(ops),
      resolution_(resolution) {
  if (inputs_.empty()) throw ValidationError(fmt::format("FIS '{}' has no input variables", name_));
  if (rules_.empty()) throw ValidationError(fmt::format("FIS '{}' has no rules", name_));
  if (resolution_ < kMinDefuzzResolution) {
    throw ValidationError(fmt::format("FIS '{}': defuzzification resolution {} is below the minimum {}", name_,
                                      resolution_, kMinDefuzzResolution));
  }
  std::set<std::string_view> names;
  for (const auto& v : inputs_) {
    if (!names.insert(v.name()).second) {
      throw ValidationError(fmt::format("FIS '{}': duplicate input variable '{}'", name_, v.name()));
    }
  }
  compile();

  const auto& u = output_.universe();
  consequent_samples_.resize(output_.size());
  for (std::size_t t = 0; t < output_.size(); ++t) {
    auto& s = consequent_samples_[t];
    s.resize(resolution_);
    double mass = 0.0;
    for (std::size_t i = 0; i < resolution_; ++i) {
      s[i] = output_.terms()[t].mf(u.lo + u.width() * static_cast<double>(i) / (resolution_ - 1));
      mass += s[i];
    }
    if (!(mass > 0.0)) {
      throw ValidationError(fmt::format("FIS '{}': output term '{}' has no mass inside the output universe", name_,
                                        output_.terms()[t].name));
    }
  }
  check_coverage();
}

void FuzzyInferenceSystem::compile() {
  compiled_.clear();
  std::set<std::vector<std::pair<std::size_t, std::size_t>>> seen;
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const auto& rule = rules_[r];
    if (rule.antecedents.empty()) {
      throw ValidationError(fmt::format("FIS '{}': rule {} has no antecedent", name_, r + 1));
    }
    CompiledRule c;
    std::set<std::size_t> used_inputs;
    for (const auto& [var, term] : rule.antecedents) {
      auto it = std::find_if(inputs_.begin(), inputs_.end(), [&](const auto& v) { return v.name() == var; });
      if (it == inputs_.end()) {
        throw ValidationError(fmt::format("FIS '{}': rule {} references unknown input '{}'", name_, r + 1, var));
      }
      const auto vi = static_cast<std::size_t>(it - inputs_.begin());
      if (!used_inputs.insert(vi).second) {
        throw ValidationError(fmt::format("FIS '{}': rule {} tests input '{}' twice", name_, r + 1, var));
      }
      auto ti = it->find(term);
      if (!ti) {
        throw ValidationError(
            fmt::format("FIS '{}': rule {} references unknown term '{}' of '{}'", name_, r + 1, term, var));
      }
      c.antecedents.emplace_back(vi, *ti);
    }
    auto out = output_.find(rule.consequent);
    if (!out) {
      throw ValidationError(fmt::format("FIS '{}': rule {} references unknown output term '{}'", name_, r + 1,
                                        rule.consequent));
    }
    c.consequent = *out;
    auto key = c.antecedents;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) {
      throw ValidationError(fmt::format("FIS '{}': rule {} repeats the antecedent of an earlier rule", name_, r + 1));
    }
    compiled_.push_back(std::move(c));
  }
}

void FuzzyInferenceSystem::check_coverage() const {
  for (const auto& v : inputs_) v.check_coverage();
  std::vector<std::vector<double>> axes;
  for (const auto& v : inputs_) axes.push_back(scan_points(v));

  std::vector<std::size_t> idx(axes.size(), 0);
  std::vector<double> point(axes.size());
  while (true) {
    for (std::size_t k = 0; k < axes.size(); ++k) point[k] = axes[k][idx[k]];
    const auto s = strengths_unchecked(point);
    if (std::none_of(s.begin(), s.end(), [](double w) { return w > 0.0; })) {
      throw ValidationError(
          fmt::format("FIS '{}': no rule fires at {}; the rule base does not cover the input space", name_,
                      fmt::join(point, ", ")));
    }
    std::size_t k = 0;
    while (k < axes.size() && ++idx[k] == axes[k].size()) idx[k++] = 0;
    if (k == axes.size()) break;
  }
}

std::vector<double> FuzzyInferenceSystem::clamp_inputs(std::span<const double> values) const {
  if (values.size() != inputs_.size()) {
    throw ValidationError(
        fmt::format("FIS '{}' expects {} inputs, got {}", name_, inputs_.size(), values.size()));
  }
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = inputs_[i].clamp(values[i]);
  return out;
}

std::vector<double> FuzzyInferenceSystem::ordered_values(const std::map<std::string, double>& values) const {
  std::vector<double> out;
  out.reserve(inputs_.size());
  for (const auto& v : inputs_) {
    auto it = values.find(v.name());
    if (it == values.end()) throw ValidationError(fmt::format("FIS '{}': missing input '{}'", name_, v.name()));
    out.push_back(it->second);
  }
  if (values.size() != inputs_.size()) {
    for (const auto& [k, _] : values) {
      if (std::none_of(inputs_.begin(), inputs_.end(), [&](const auto& v) { return v.name() == k; })) {
        throw ValidationError(fmt::format("FIS '{}': unknown input '{}'", name_, k));
      }
    }
  }
  return out;
}

std::vector<double> FuzzyInferenceSystem::strengths_unchecked(std::span<const double> clamped) const {
  std::vector<std::vector<double>> degrees(inputs_.size());
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    const auto& terms = inputs_[i].terms();
    degrees[i].reserve(terms.size());
    for (const auto& t : terms) degrees[i].push_back(t.mf(clamped[i]));
  }
  std::vector<double> out;
  out.reserve(compiled_.size());
  for (const auto& rule : compiled_) {
    double w = 1.0;
    for (const auto& [vi, ti] : rule.antecedents) w = std::min(w, degrees[vi][ti]);
    out.push_back(w);
  }
  return out;
}

std::vector<double> FuzzyInferenceSystem::aggregate_from_strengths(std::span<const double> strengths) const {
  std::vector<double> agg(resolution_, 0.0);
  for (std::size_t r = 0; r < compiled_.size(); ++r) {
    const double w = strengths[r];
    if (w <= 0.0) continue;
    const auto& s = consequent_samples_[compiled_[r].consequent];
    for (std::size_t i = 0; i < resolution_; ++i) agg[i] = std::max(agg[i], std::min(w, s[i]));
  }
  return agg;
}

std::map<std::string, double> FuzzyInferenceSystem::describe(std::span<const double> values) const {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < inputs_.size() && i < values.size(); ++i) out.emplace(inputs_[i].name(), values[i]);
  return out;
}

std::vector<double> FuzzyInferenceSystem::fire_strengths(std::span<const double> values) const {
  return strengths_unchecked(clamp_inputs(values));
}

std::vector<double> FuzzyInferenceSystem::fire_strengths(const std::map<std::string, double>& values) const {
  return fire_strengths(ordered_values(values));
}

std::vector<double> FuzzyInferenceSystem::aggregate(std::span<const double> values) const {
  return aggregate_from_strengths(fire_strengths(values));
}

double FuzzyInferenceSystem::infer(std::span<const double> values) const {
  const auto agg = aggregate(values);
  try {
    return defuzz_centroid(agg, output_.universe());
  } catch (const NoRuleFiredError&) {
    throw NoRuleFiredError(name_, describe(values));
  }
}

double FuzzyInferenceSystem::infer(const std::map<std::string, double>& values) const {
  return infer(ordered_values(values));
}

FuzzyInferenceSystem FuzzyInferenceSystem::with_resolution(std::size_t resolution) const {
  return {name_, inputs_, output_, rules_, ops_, resolution};
}

}  // namespace fuzzyest
