#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzzyest/linguistic_variable.hpp"

namespace fuzzyest {

/// IF in_1 is t_1 AND ... THEN out is consequent.
struct Rule {
  /// (input variable, term) pairs joined by the AND operator.
  std::vector<std::pair<std::string, std::string>> antecedents;
  std::string consequent;

  friend bool operator==(const Rule&, const Rule&) = default;
};

// The operator set is fixed to classic Mamdani. Each enum is the single place
// where an alternative (product t-norm, bisector, ...) would be added.
enum class AndOperator { minimum };
enum class Implication { minimum };
enum class Aggregation { maximum };
enum class Defuzzifier { centroid };

struct Operators {
  AndOperator conjunction = AndOperator::minimum;
  Implication implication = Implication::minimum;
  Aggregation aggregation = Aggregation::maximum;
  Defuzzifier defuzzifier = Defuzzifier::centroid;

  friend bool operator==(const Operators&, const Operators&) = default;
};

std::string_view to_string(AndOperator) noexcept;
std::string_view to_string(Implication) noexcept;
std::string_view to_string(Aggregation) noexcept;
std::string_view to_string(Defuzzifier) noexcept;
/// Throws ParseError when the name is not a supported operator.
Operators operators_from_strings(std::string_view conjunction, std::string_view implication,
                                 std::string_view aggregation, std::string_view defuzzifier);

inline constexpr std::size_t kDefaultDefuzzResolution = 1001;
inline constexpr std::size_t kMinDefuzzResolution = 101;

/// Centre of mass of a membership curve sampled on `samples.size()` evenly
/// spaced points spanning `universe` (endpoints included).
/// Throws DomainError for fewer than kMinDefuzzResolution samples and
/// NoRuleFiredError when the curve has no mass.
double defuzz_centroid(std::span<const double> samples, Interval universe);

/// An immutable Mamdani fuzzy inference system.
///
/// Construction resolves every rule against the variables and rejects unknown
/// names, rules without antecedents, duplicate antecedent sets, and rule bases
/// that leave part of the input space without a firing rule (grid scan).
class FuzzyInferenceSystem {
 public:
  FuzzyInferenceSystem(std::string name, std::vector<LinguisticVariable> inputs, LinguisticVariable output,
                       std::vector<Rule> rules, Operators ops = {},
                       std::size_t resolution = kDefaultDefuzzResolution);

  const std::string& name() const noexcept { return name_; }
  const std::vector<LinguisticVariable>& inputs() const noexcept { return inputs_; }
  const LinguisticVariable& output() const noexcept { return output_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const Operators& operators() const noexcept { return ops_; }
  std::size_t resolution() const noexcept { return resolution_; }

  /// Crisp inputs in the order of inputs(). Each is clamped per the
  /// variable's range policy.
  double infer(std::span<const double> values) const;
  double infer(const std::map<std::string, double>& values) const;

  /// Firing strength of each rule, in rule order.
  std::vector<double> fire_strengths(std::span<const double> values) const;
  std::vector<double> fire_strengths(const std::map<std::string, double>& values) const;

  /// The aggregated output curve sampled on the defuzzification grid.
  std::vector<double> aggregate(std::span<const double> values) const;

  /// Same system with a different defuzzification grid.
  FuzzyInferenceSystem with_resolution(std::size_t resolution) const;

  friend bool operator==(const FuzzyInferenceSystem& a, const FuzzyInferenceSystem& b) {
    return a.name_ == b.name_ && a.inputs_ == b.inputs_ && a.output_ == b.output_ && a.rules_ == b.rules_ &&
           a.ops_ == b.ops_ && a.resolution_ == b.resolution_;
  }

 private:
  struct CompiledRule {
    std::vector<std::pair<std::size_t, std::size_t>> antecedents;  // (input index, term index)
    std::size_t consequent;
  };

  std::vector<double> ordered_values(const std::map<std::string, double>& values) const;
  std::vector<double> strengths_unchecked(std::span<const double> clamped) const;
  std::vector<double> aggregate_from_strengths(std::span<const double> strengths) const;
  std::vector<double> clamp_inputs(std::span<const double> values) const;
  std::map<std::string, double> describe(std::span<const double> values) const;
  void compile();
  void check_coverage() const;

  std::string name_;
  std::vector<LinguisticVariable> inputs_;
  LinguisticVariable output_;
  std::vector<Rule> rules_;
  Operators ops_;
  std::size_t resolution_;

  std::vector<CompiledRule> compiled_;
  std::vector<std::vector<double>> consequent_samples_;  // per output term, on the defuzz grid
};

}  // namespace fuzzyest
