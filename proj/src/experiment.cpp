#include "fuzzyest/experiment.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "fuzzyest/errors.hpp"
#include "fuzzyest/text.hpp"

namespace fuzzyest {

namespace {

std::string shape_code(PartitionShape shape) { return shape == PartitionShape::triangular ? "TMF" : "GMF"; }

std::string column_tag(const ConfigurationResult& c) {
  return fmt::format("fis_{}{}", text::lower(shape_code(c.shape)), c.size_terms);
}

ConfigurationResult run_configuration(const std::vector<ProjectRecord>& projects, const CostDriverTable& table,
                                      const NominalFisConfig& config) {
  const auto tag = estimator_tag(config.shape, config.size_terms);
  auto reports = evaluate_estimator(projects, table, EffortEstimator::build(config, table), tag);
  return {config.shape, config.size_terms, tag, std::move(reports.nominal), std::move(reports.total)};
}

std::string num(double x) { return text::format_double(x); }

std::string pct(double fraction) { return text::format_double(100.0 * fraction); }

// Indices of the projects ordered by size, ties kept in dataset order.
std::vector<std::size_t> by_size(const std::vector<ProjectRecord>& projects) {
  std::vector<std::size_t> idx(projects.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return projects[a].kdsi < projects[b].kdsi; });
  return idx;
}

std::vector<const ConfigurationResult*> of_shape(const ExperimentResult& r, PartitionShape shape) {
  std::vector<const ConfigurationResult*> out;
  for (const auto& c : r.configurations) {
    if (c.shape == shape) out.push_back(&c);
  }
  return out;
}

// The configuration with the most size terms for a shape, if any.
const ConfigurationResult* richest(const ExperimentResult& r, PartitionShape shape) {
  const ConfigurationResult* best = nullptr;
  for (const auto* c : of_shape(r, shape)) {
    if (!best || c->size_terms > best->size_terms) best = c;
  }
  return best;
}

enum class Quantity { predicted, actual, percent_error };

std::string value_of(const PredictionPair& p, Quantity q) {
  switch (q) {
    case Quantity::predicted:
      return num(p.predicted);
    case Quantity::actual:
      return num(p.actual);
    case Quantity::percent_error:
      return num(100.0 * (p.predicted - p.actual) / p.actual);
  }
  return {};
}

// One row per project (size order) with the COCOMO column then one column per
// listed configuration.
DataTable per_project(const ExperimentResult& r, std::string name, std::string title, Scope scope, Quantity q,
                      const std::vector<const ConfigurationResult*>& configs, bool with_actual) {
  DataTable t{std::move(name), std::move(title), {"id", "kdsi", "mode"}, {}};
  const std::string unit = q == Quantity::percent_error ? "pct_error" : "pm";
  if (with_actual) t.columns.push_back(scope == Scope::nominal ? "actual_nominal_pm" : "actual_pm");
  t.columns.push_back("cocomo_" + unit);
  for (const auto* c : configs) t.columns.push_back(column_tag(*c) + "_" + unit);

  const auto& base = scope == Scope::nominal ? r.cocomo_nominal : r.cocomo_total;
  for (std::size_t i : by_size(r.projects)) {
    const auto& p = r.projects[i];
    std::vector<std::string> row{p.id, num(p.kdsi), std::string(to_string(p.mode))};
    if (with_actual) row.push_back(num(base.pairs[i].actual));
    row.push_back(value_of(base.pairs[i], q));
    for (const auto* c : configs) {
      const auto& rep = scope == Scope::nominal ? c->nominal : c->total;
      row.push_back(value_of(rep.pairs[i], q));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

DataTable mmre_bars(const ExperimentResult& r, std::string name, std::string title, Scope scope) {
  DataTable t{std::move(name), std::move(title), {"estimator", "n", "mmre_pct", "reference_mmre_pct"}, {}};
  auto add = [&](const EvaluationReport& rep) {
    const auto ref = reference_values(rep.estimator);
    const auto value = ref ? (scope == Scope::nominal ? ref->mmre_nominal : ref->mmre_total) : std::nullopt;
    t.rows.push_back({rep.estimator, std::to_string(rep.n), pct(rep.mmre), value ? num(*value) : ""});
  };
  add(scope == Scope::nominal ? r.cocomo_nominal : r.cocomo_total);
  for (const auto& c : r.configurations) add(scope == Scope::nominal ? c.nominal : c.total);
  return t;
}

DataTable table4(const ExperimentResult& r) {
  DataTable t{"table4",
              "PRED(25) in percent by size MF count",
              {"mf_count", "tmf_nominal_pred25_pct", "tmf_total_pred25_pct", "gmf_nominal_pred25_pct",
               "gmf_total_pred25_pct"},
              {}};
  std::vector<std::size_t> counts;
  for (const auto& c : r.configurations) {
    if (std::find(counts.begin(), counts.end(), c.size_terms) == counts.end()) counts.push_back(c.size_terms);
  }
  std::sort(counts.begin(), counts.end());
  for (std::size_t n : counts) {
    std::vector<std::string> row{std::to_string(n)};
    for (auto shape : {PartitionShape::triangular, PartitionShape::gaussian}) {
      const auto* c = r.find(shape, n);
      row.push_back(c ? pct(c->nominal.pred25) : "");
      row.push_back(c ? pct(c->total.pred25) : "");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

std::string estimator_tag(PartitionShape shape, std::size_t size_terms) {
  return fmt::format("FIS-{}-{}", shape_code(shape), size_terms);
}

ScopedReports evaluate_cocomo(std::span<const ProjectRecord> projects, const CostDriverTable& table) {
  const std::string tag(kCocomoTag);
  std::vector<PredictionPair> nominal, total;
  for (const auto& p : projects) {
    const double f = eaf(table, p.ratings);
    const double e = nominal_effort(p.mode, p.kdsi);
    nominal.push_back({p.id, p.kdsi, p.actual_pm / f, e, tag, Scope::nominal});
    total.push_back({p.id, p.kdsi, p.actual_pm, e * f, tag, Scope::total});
  }
  return {evaluate(tag, Scope::nominal, std::move(nominal)), evaluate(tag, Scope::total, std::move(total))};
}

ScopedReports evaluate_estimator(std::span<const ProjectRecord> projects, const CostDriverTable& table,
                                 const EffortEstimator& estimator, const std::string& tag) {
  std::vector<PredictionPair> nominal, total;
  for (const auto& p : projects) {
    const auto e = estimator.estimate(p, table);
    nominal.push_back({p.id, p.kdsi, p.actual_pm / eaf(table, p.ratings), e.nominal_pm, tag, Scope::nominal});
    total.push_back({p.id, p.kdsi, p.actual_pm, e.total_pm, tag, Scope::total});
  }
  return {evaluate(tag, Scope::nominal, std::move(nominal)), evaluate(tag, Scope::total, std::move(total))};
}

const ConfigurationResult* ExperimentResult::find(PartitionShape shape, std::size_t size_terms) const noexcept {
  for (const auto& c : configurations) {
    if (c.shape == shape && c.size_terms == size_terms) return &c;
  }
  return nullptr;
}

ExperimentResult run_experiment(std::span<const ProjectRecord> dataset, const CostDriverTable& table,
                                const ExperimentOptions& options) {
  if (options.shapes.empty() || options.counts.empty()) throw DomainError("experiment matrix is empty");

  ExperimentResult result;
  result.range = options.range;
  result.projects = filter_by_size(dataset, options.range);
  result.excluded = dataset.size() - result.projects.size();
  if (result.projects.empty()) {
    throw DomainError(fmt::format("no project lies in the size range [{}, {}] KDSI", num(options.range.lo),
                                  num(options.range.hi)));
  }

  auto baseline = evaluate_cocomo(result.projects, table);
  result.cocomo_nominal = std::move(baseline.nominal);
  result.cocomo_total = std::move(baseline.total);

  std::vector<NominalFisConfig> configs;
  for (auto shape : options.shapes) {
    for (auto n : options.counts) {
      auto c = options.base;
      c.shape = shape;
      c.size_terms = n;
      configs.push_back(c);
    }
  }

  auto guarded = [&](const NominalFisConfig& c) {
    try {
      return run_configuration(result.projects, table, c);
    } catch (const std::exception& e) {
      throw Error(fmt::format("configuration {} failed: {}", estimator_tag(c.shape, c.size_terms), e.what()));
    }
  };

  if (options.parallel && configs.size() > 1) {
    std::vector<std::future<ConfigurationResult>> futures;
    for (const auto& c : configs) futures.push_back(std::async(std::launch::async, guarded, std::cref(c)));
    // Collect every future before rethrowing so no task outlives `result`.
    std::exception_ptr first_error;
    for (auto& f : futures) {
      try {
        result.configurations.push_back(f.get());
      } catch (...) {
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);
  } else {
    for (const auto& c : configs) result.configurations.push_back(guarded(c));
  }
  return result;
}

std::optional<ReferenceValues> reference_values(std::string_view estimator) {
  static const std::map<std::string, ReferenceValues, std::less<>> kValues{
      {"COCOMO", {39.6, 38.83, std::nullopt, std::nullopt}},
      {"FIS-GMF-3", {73.14, 64.26, 15.38, 18.46}},
      {"FIS-GMF-5", {46.25, 41.06, 32.3, 41.54}},
      {"FIS-GMF-7", {45.89, 38.38, 35.38, 43.07}},
      {"FIS-TMF-3", {62.23, 60.0, 16.92, 15.38}},
      {"FIS-TMF-5", {51.73, 46.17, 20.0, 33.84}},
      {"FIS-TMF-7", {48.92, 41.4, 33.84, 41.54}},
  };
  auto it = kValues.find(estimator);
  if (it == kValues.end()) return std::nullopt;
  return it->second;
}

Deviation compare_to_reference(double computed, double reference, double band) {
  const double delta = computed - reference;
  return {computed, reference, delta, std::abs(delta) > band};
}

std::vector<DataTable> figure_tables(const ExperimentResult& r) {
  using enum PartitionShape;
  std::vector<const ConfigurationResult*> richest_pair;
  for (auto shape : {triangular, gaussian}) {
    if (const auto* c = richest(r, shape)) richest_pair.push_back(c);
  }
  std::vector<const ConfigurationResult*> all;
  for (const auto& c : r.configurations) all.push_back(&c);

  std::vector<DataTable> out;
  out.push_back(per_project(r, "fig06", "Nominal effort of the triangular-MF systems and COCOMO", Scope::nominal,
                            Quantity::predicted, of_shape(r, triangular), false));
  out.push_back(per_project(r, "fig07", "Nominal effort of the Gaussian-MF systems and COCOMO", Scope::nominal,
                            Quantity::predicted, of_shape(r, gaussian), false));
  out.push_back(per_project(r, "fig08", "Nominal effort of the richest triangular and Gaussian systems and COCOMO",
                            Scope::nominal, Quantity::predicted, richest_pair, false));
  out.push_back(mmre_bars(r, "fig09", "MMRE of nominal effort", Scope::nominal));
  out.push_back(mmre_bars(r, "fig10", "MMRE of total effort", Scope::total));
  out.push_back(per_project(r, "fig11", "Nominal effort: fuzzy systems, COCOMO and actual", Scope::nominal,
                            Quantity::predicted, all, true));
  out.push_back(per_project(r, "fig12", "Total effort: fuzzy systems, COCOMO and actual", Scope::total,
                            Quantity::predicted, all, true));
  out.push_back(per_project(r, "fig13", "Percentage error of nominal effort", Scope::nominal, Quantity::percent_error,
                            all, false));
  out.push_back(per_project(r, "fig14", "Percentage error of total effort", Scope::total, Quantity::percent_error,
                            all, false));
  out.push_back(table4(r));
  return out;
}

void write_table(std::ostream& out, const DataTable& table, std::span<const std::string> header) {
  for (const auto& h : header) out << "# " << h << '\n';
  out << "# " << table.title << '\n';
  out << fmt::format("{}\n", fmt::join(table.columns, ","));
  for (const auto& row : table.rows) out << fmt::format("{}\n", fmt::join(row, ","));
}

std::string summary_text(const ExperimentResult& r, double band) {
  std::string s;
  s += fmt::format("projects: n={} in [{}, {}] KDSI ({} excluded by the range filter)\n", r.projects.size(),
                   num(r.range.lo), num(r.range.hi), r.excluded);
  s += fmt::format("{:<10} {:<8} {:>4} {:>9} {:>9} {:>8}  {:<14} {:>9} {:>9}\n", "estimator", "scope", "n", "MMRE%",
                   "ref", "delta", "flag", "PRED25%", "ref");

  auto line = [&](const EvaluationReport& rep) {
    const auto ref = reference_values(rep.estimator);
    const bool nominal = rep.scope == Scope::nominal;
    const auto ref_mmre = ref ? (nominal ? ref->mmre_nominal : ref->mmre_total) : std::nullopt;
    const auto ref_pred = ref ? (nominal ? ref->pred25_nominal : ref->pred25_total) : std::nullopt;
    std::string ref_col = "-", delta_col = "-", flag = "-";
    if (ref_mmre) {
      const auto d = compare_to_reference(100.0 * rep.mmre, *ref_mmre, band);
      ref_col = fmt::format("{:.2f}", *ref_mmre);
      delta_col = fmt::format("{:+.2f}", d.delta);
      flag = d.flagged ? fmt::format("DEVIATES(>{:g})", band) : "ok";
    }
    s += fmt::format("{:<10} {:<8} {:>4} {:>9.2f} {:>9} {:>8}  {:<14} {:>9.2f} {:>9}\n", rep.estimator,
                     to_string(rep.scope), rep.n, 100.0 * rep.mmre, ref_col, delta_col, flag, 100.0 * rep.pred25,
                     ref_pred ? fmt::format("{:.2f}", *ref_pred) : "-");
  };
  line(r.cocomo_nominal);
  line(r.cocomo_total);
  for (const auto& c : r.configurations) {
    line(c.nominal);
    line(c.total);
  }
  s += fmt::format("deviation band: +/-{:g} MMRE points; flags are informational\n", band);
  return s;
}

}  // namespace fuzzyest
