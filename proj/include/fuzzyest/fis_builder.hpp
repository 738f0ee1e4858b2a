#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuzzyest/cocomo.hpp"
#include "fuzzyest/dataset.hpp"
#include "fuzzyest/inference.hpp"

namespace fuzzyest {

// ---------------------------------------------------------------------------
// Nominal-effort FIS over (mode, size)
// ---------------------------------------------------------------------------

/// Where the (mode, size, effort) examples for rule synthesis come from.
enum class SampleSource {
  analytic,  ///< one example per (mode, size-term) cell at the term centre
  random,    ///< seeded artificial dataset, reduced with Wang-Mendel conflict resolution
};

std::string_view to_string(SampleSource s) noexcept;
SampleSource sample_source_from_string(std::string_view s);

struct NominalFisConfig {
  std::size_t size_terms = 7;
  PartitionShape shape = PartitionShape::gaussian;
  Interval size_universe{1.0, 100.0};
  /// Crisp mode axis: the scale exponent B (organic 1.05, semidetached 1.12,
  /// embedded 1.20). Values between two modes express a blended project.
  Interval mode_universe{1.0, 1.25};
  double mode_sigma = 0.02;
  /// Derived from the consequent widths when unset.
  std::optional<Interval> effort_universe;
  /// Consequent sigma = max(relative_width * e, width_scale * g), g being the
  /// smallest gap to a neighbouring consequent centre of the same mode.
  double relative_width = 0.05;
  double width_scale = 0.25;
  SampleSource source = SampleSource::analytic;
  std::size_t sample_count = 1000;
  std::uint64_t seed = 0;
  std::size_t resolution = kDefaultDefuzzResolution;

  /// Throws DomainError / InvalidPartitionError on the first violated invariant.
  void validate() const;
  /// One-line "key=value ..." summary, used in file headers.
  std::string describe() const;
};

/// Position of a mode on the crisp mode axis (its B coefficient).
constexpr double mode_axis_value(Mode mode) noexcept { return coefficients(mode).b; }

struct ArtificialSample {
  double kdsi;
  Mode mode;
  double effort;

  friend bool operator==(const ArtificialSample&, const ArtificialSample&) = default;
};

/// Sizes uniform over `size_range`, modes uniform over the three categories,
/// effort = nominal_effort(mode, size). The generator is mt19937_64 and the
/// mapping to reals is done here, so a seed gives the same sequence on every
/// platform. Throws DomainError for count 0 or an empty/non-positive range.
std::vector<ArtificialSample> generate_artificial_dataset(std::size_t count, Interval size_range,
                                                          std::uint64_t seed);

/// Builds the 3 x n rule base "IF mode is m_j AND size is s_i THEN effort is
/// e_ji" with inputs (mode, size) and output effort (person-months).
FuzzyInferenceSystem synthesize_nominal_fis(const NominalFisConfig& config);

/// Same, with consequents taken from `samples`: each sample proposes a rule for
/// the cell where it has the highest degree, and per cell the proposal with the
/// highest degree wins. Cells no sample reaches use the analytic centre value.
FuzzyInferenceSystem synthesize_nominal_fis(const NominalFisConfig& config, std::span<const ArtificialSample> samples);

// ---------------------------------------------------------------------------
// Cost-driver FISs
// ---------------------------------------------------------------------------

struct DriverFisSpec {
  DriverId id;
  /// Measured percent axis when the driver has anchors, else the rating index
  /// (very low = 0 ... extra high = 5) restricted to the defined levels.
  LinguisticVariable antecedent;
  /// Effort multiplier over [min, max] of the driver's table.
  LinguisticVariable consequent;
  /// One rule per defined level, lowest level first.
  std::vector<Rule> rules;
};

/// Antecedent term name for a rating ("nom", "high", "vhigh", ...).
std::string_view level_term_name(Rating r) noexcept;

DriverFisSpec make_driver_spec(const CostDriver& driver);

/// Single-input Mamdani FIS named after the driver token ("stor"). Throws
/// ValidationError when the spec does not match the table: wrong level set or
/// consequent peaks that differ from the table multipliers.
FuzzyInferenceSystem build_driver_fis(const DriverFisSpec& spec, const CostDriver& driver,
                                      std::size_t resolution = kDefaultDefuzzResolution);

/// Crisp antecedent value that represents a rating (its anchor or index).
double driver_input(const CostDriver& driver, Rating r);

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

using DriverInputs = std::array<double, kDriverCount>;

DriverInputs driver_inputs(const CostDriverTable& table, const Ratings& ratings);

struct FuzzyEstimate {
  double nominal_pm;
  double eaf;
  double total_pm;
  std::array<double, kDriverCount> multipliers;
};

/// The nominal FIS plus the fifteen driver FISs.
class EffortEstimator {
 public:
  /// `drivers` must hold exactly one FIS per driver, named by its token; the
  /// nominal FIS must have inputs (mode, size). Throws ValidationError.
  EffortEstimator(FuzzyInferenceSystem nominal, std::vector<FuzzyInferenceSystem> drivers);

  static EffortEstimator build(const NominalFisConfig& config, const CostDriverTable& table);

  FuzzyEstimate estimate(double mode_value, double kdsi, const DriverInputs& inputs) const;
  FuzzyEstimate estimate(const ProjectRecord& project, const CostDriverTable& table) const;

  double nominal(double mode_value, double kdsi) const;

  const FuzzyInferenceSystem& nominal_fis() const noexcept { return nominal_; }
  const FuzzyInferenceSystem& driver_fis(DriverId id) const noexcept { return drivers_[index_of(id)]; }
  const std::vector<FuzzyInferenceSystem>& driver_fises() const noexcept { return drivers_; }

 private:
  FuzzyInferenceSystem nominal_;
  std::vector<FuzzyInferenceSystem> drivers_;  // indexed by index_of(DriverId)
};

/// Fuzzy nominal effort times the product of the fuzzy effort multipliers.
/// `drivers` must contain all fifteen driver systems.
double fuzzy_total_effort(const FuzzyInferenceSystem& nominal, const std::map<DriverId, FuzzyInferenceSystem>& drivers,
                          const ProjectRecord& project, const CostDriverTable& table);

}  // namespace fuzzyest
