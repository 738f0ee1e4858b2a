#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuzzyest/dataset.hpp"
#include "fuzzyest/evaluation.hpp"
#include "fuzzyest/fis_builder.hpp"

namespace fuzzyest {

inline constexpr std::string_view kCocomoTag = "COCOMO";

/// "FIS-TMF-7", "FIS-GMF-3", ...
std::string estimator_tag(PartitionShape shape, std::size_t size_terms);

struct ExperimentOptions {
  std::vector<PartitionShape> shapes{PartitionShape::triangular, PartitionShape::gaussian};
  std::vector<std::size_t> counts{3, 5, 7};
  Interval range = kValidationRange;
  /// Template for every configuration; shape and size_terms are overridden.
  NominalFisConfig base;
  /// Run configurations on separate threads. Results are identical either way.
  bool parallel = true;
};

struct ConfigurationResult {
  PartitionShape shape;
  std::size_t size_terms;
  std::string tag;
  EvaluationReport nominal;
  EvaluationReport total;
};

/// Nominal scope compares predicted nominal effort with the actual effort
/// divided by the project's crisp EAF; total scope compares against the
/// actual effort as recorded.
struct ExperimentResult {
  std::vector<ProjectRecord> projects;  ///< the filtered subset, in dataset order
  std::size_t excluded = 0;
  Interval range;
  EvaluationReport cocomo_nominal;
  EvaluationReport cocomo_total;
  std::vector<ConfigurationResult> configurations;  ///< shapes-major, in option order

  const ConfigurationResult* find(PartitionShape shape, std::size_t size_terms) const noexcept;
};

struct ScopedReports {
  EvaluationReport nominal;
  EvaluationReport total;
};

/// Crisp intermediate COCOMO against the projects.
ScopedReports evaluate_cocomo(std::span<const ProjectRecord> projects, const CostDriverTable& table);

/// A fuzzy estimator against the projects, tagged `tag`.
ScopedReports evaluate_estimator(std::span<const ProjectRecord> projects, const CostDriverTable& table,
                                 const EffortEstimator& estimator, const std::string& tag);

/// Throws DomainError for an empty matrix or when no project survives the
/// range filter; any configuration failure is rethrown as Error naming it.
ExperimentResult run_experiment(std::span<const ProjectRecord> dataset, const CostDriverTable& table,
                                const ExperimentOptions& options);

// ---------------------------------------------------------------------------
// Published reference values (percent scale)
// ---------------------------------------------------------------------------

struct ReferenceValues {
  std::optional<double> mmre_nominal;
  std::optional<double> mmre_total;
  std::optional<double> pred25_nominal;
  std::optional<double> pred25_total;
};

std::optional<ReferenceValues> reference_values(std::string_view estimator);

/// Allowed distance, in MMRE percentage points, before a result is flagged.
inline constexpr double kDefaultDeviationBand = 10.0;

struct Deviation {
  double computed;
  double reference;
  double delta;  ///< computed - reference
  bool flagged;
};

Deviation compare_to_reference(double computed, double reference, double band = kDefaultDeviationBand);

// ---------------------------------------------------------------------------
// Plot-data tables and summary
// ---------------------------------------------------------------------------

struct DataTable {
  std::string name;  ///< file stem: "fig06", ..., "table4"
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// fig06 ... fig14 and table4, in that order.
std::vector<DataTable> figure_tables(const ExperimentResult& result);

/// `header` lines are written first, each prefixed with "# ".
void write_table(std::ostream& out, const DataTable& table, std::span<const std::string> header);

/// Human-readable metrics with reference values and deviation flags.
std::string summary_text(const ExperimentResult& result, double band = kDefaultDeviationBand);

}  // namespace fuzzyest
