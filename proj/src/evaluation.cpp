#include "fuzzyest/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "fuzzyest/errors.hpp"

namespace fuzzyest {

namespace {

std::vector<double> mres_of(std::span<const PredictionPair> pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(mre(p.actual, p.predicted));
  return out;
}

}  // namespace

std::string_view to_string(Scope s) noexcept { return s == Scope::nominal ? "nominal" : "total"; }

double mre(double actual, double predicted) {
  if (!(actual > 0.0)) throw DomainError(fmt::format("actual effort must be positive, got {}", actual));
  return std::abs(actual - predicted) / actual;
}

double mmre_of(std::span<const double> mres) {
  if (mres.empty()) throw DomainError("MMRE of an empty set");
  return std::accumulate(mres.begin(), mres.end(), 0.0) / static_cast<double>(mres.size());
}

double pred_of(std::span<const double> mres, double x) {
  if (mres.empty()) throw DomainError("PRED of an empty set");
  if (!(x >= 0.0)) throw DomainError(fmt::format("PRED level must be non-negative, got {}", x));
  const auto hits = std::count_if(mres.begin(), mres.end(), [x](double m) { return m <= x; });
  return static_cast<double>(hits) / static_cast<double>(mres.size());
}

double mmre(std::span<const PredictionPair> pairs) { return mmre_of(mres_of(pairs)); }

double pred(std::span<const PredictionPair> pairs, double x) { return pred_of(mres_of(pairs), x); }

std::vector<ErrorPoint> percentage_error_series(std::span<const PredictionPair> pairs) {
  std::vector<ErrorPoint> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    mre(p.actual, p.predicted);  // validates actual
    out.push_back({p.project_id, p.kdsi, 100.0 * (p.predicted - p.actual) / p.actual});
  }
  std::stable_sort(out.begin(), out.end(), [](const ErrorPoint& a, const ErrorPoint& b) { return a.kdsi < b.kdsi; });
  return out;
}

EvaluationReport evaluate(std::string estimator, Scope scope, std::vector<PredictionPair> pairs) {
  EvaluationReport r;
  r.estimator = std::move(estimator);
  r.scope = scope;
  r.mres = mres_of(pairs);
  r.n = pairs.size();
  r.mmre = mmre_of(r.mres);
  r.pred25 = pred_of(r.mres, kPredLevel);
  r.pairs = std::move(pairs);
  return r;
}

}  // namespace fuzzyest
