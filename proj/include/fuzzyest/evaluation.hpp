#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzyest {

/// Acceptable-accuracy threshold for PRED: within 25% of the actual effort.
inline constexpr double kPredLevel = 0.25;

enum class Scope { nominal, total };

std::string_view to_string(Scope s) noexcept;

struct PredictionPair {
  std::string project_id;
  double kdsi = 0.0;
  double actual = 0.0;     ///< person-months
  double predicted = 0.0;  ///< person-months
  std::string estimator;   ///< "COCOMO", "FIS-TMF-7", ...
  Scope scope = Scope::nominal;
};

/// |actual - predicted| / actual. Throws DomainError unless actual > 0.
double mre(double actual, double predicted);

/// Mean of the MREs. Throws DomainError on an empty set.
double mmre(std::span<const PredictionPair> pairs);
double mmre_of(std::span<const double> mres);

/// Fraction of pairs with MRE <= x (inclusive). Throws DomainError on an
/// empty set or a negative or NaN level.
double pred(std::span<const PredictionPair> pairs, double x);
double pred_of(std::span<const double> mres, double x);

struct ErrorPoint {
  std::string project_id;
  double kdsi;
  double percent;  ///< 100 * (predicted - actual) / actual
};

/// Signed percentage errors, ordered by project size (stable for ties).
std::vector<ErrorPoint> percentage_error_series(std::span<const PredictionPair> pairs);

struct EvaluationReport {
  std::string estimator;
  Scope scope = Scope::nominal;
  std::size_t n = 0;
  double mmre = 0.0;    ///< fraction; multiply by 100 for the percent scale
  double pred25 = 0.0;  ///< fraction
  std::vector<double> mres;
  std::vector<PredictionPair> pairs;
};

/// Metrics over a nonempty set of pairs sharing one estimator and scope.
EvaluationReport evaluate(std::string estimator, Scope scope, std::vector<PredictionPair> pairs);

}  // namespace fuzzyest
