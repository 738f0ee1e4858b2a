#include "commands.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "fuzzyest/errors.hpp"
#include "fuzzyest/experiment.hpp"
#include "fuzzyest/fis_builder.hpp"
#include "fuzzyest/fis_file.hpp"
#include "fuzzyest/text.hpp"

namespace fuzzyest::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::string_view kUnits = "units: size KDSI, effort person-months, MMRE and PRED in percent";

struct Globals {
  std::uint64_t seed = 0;
  std::size_t resolution = kDefaultDefuzzResolution;
  std::string range_text;
  std::string out;
  std::string drivers_path;
};

struct FisOptions {
  std::size_t mf_count = 7;
  std::string shape = "gaussian";
  std::string source = "analytic";
  std::size_t samples = 1000;
  std::string fis_dir;
};

Interval parse_range(const std::string& s) {
  const auto parts = text::split(s, ':');
  if (parts.size() != 2) throw DomainError(fmt::format("range '{}' must look like lo:hi", s));
  const auto lo = text::parse_double(parts[0]);
  const auto hi = text::parse_double(parts[1]);
  if (!lo || !hi) throw DomainError(fmt::format("range '{}' must look like lo:hi with numeric bounds", s));
  if (!(*lo > 0.0 && *lo < *hi)) throw DomainError(fmt::format("range '{}' must satisfy 0 < lo < hi", s));
  return {*lo, *hi};
}

Interval size_range(const Globals& g) { return g.range_text.empty() ? kValidationRange : parse_range(g.range_text); }

CostDriverTable driver_table(const Globals& g) {
  return g.drivers_path.empty() ? CostDriverTable::builtin() : CostDriverTable::load(g.drivers_path);
}

NominalFisConfig make_config(const Globals& g, const FisOptions& f) {
  NominalFisConfig c;
  c.size_terms = f.mf_count;
  c.shape = partition_shape_from_string(f.shape);
  c.size_universe = size_range(g);
  c.source = sample_source_from_string(f.source);
  c.sample_count = f.samples;
  c.seed = g.seed;
  c.resolution = g.resolution;
  c.validate();
  return c;
}

std::string header_line(const Globals& g, const std::string& config) {
  return fmt::format("{} | seed={} | config={} | {}", tool_version(), g.seed, config, kUnits);
}

fs::path nominal_path(const fs::path& dir) { return dir / "nominal.fis.json"; }
fs::path driver_path(const fs::path& dir, DriverId id) { return dir / "drivers" / fmt::format("{}.fis.json", to_token(id)); }

struct LoadedEstimator {
  EffortEstimator estimator;
  std::string config;
};

// Reads a directory written by build-fis. An explicit --defuzz-resolution
// overrides the resolution recorded in the files.
LoadedEstimator load_estimator_dir(const fs::path& dir, std::optional<std::size_t> resolution) {
  auto apply = [&](FuzzyInferenceSystem fis) { return resolution ? fis.with_resolution(*resolution) : fis; };
  auto nominal = load_fis(nominal_path(dir).string());
  std::vector<FuzzyInferenceSystem> drivers;
  for (DriverId id : kAllDrivers) drivers.push_back(apply(load_fis(driver_path(dir, id).string()).fis));
  return {EffortEstimator(apply(std::move(nominal.fis)), std::move(drivers)),
          fmt::format("fis_dir={} {}", dir.string(), nominal.header.config)};
}

LoadedEstimator obtain_estimator(const Globals& g, const FisOptions& f, bool resolution_set) {
  if (!f.fis_dir.empty()) {
    return load_estimator_dir(f.fis_dir, resolution_set ? std::optional(g.resolution) : std::nullopt);
  }
  const auto config = make_config(g, f);
  return {EffortEstimator::build(config, driver_table(g)), config.describe()};
}

// Estimator tag from the shape and count of the nominal FIS size terms.
std::string tag_of(const EffortEstimator& e) {
  const auto& size = e.nominal_fis().inputs().at(1);
  const bool gaussian = std::all_of(size.terms().begin(), size.terms().end(),
                                    [](const Term& t) { return t.mf.shape() == Shape::gaussian; });
  return estimator_tag(gaussian ? PartitionShape::gaussian : PartitionShape::triangular, size.size());
}

std::string describe_rule(const Rule& r, const std::string& output) {
  std::vector<std::string> parts;
  for (const auto& [var, term] : r.antecedents) parts.push_back(fmt::format("{} is {}", var, term));
  return fmt::format("IF {} THEN {} is {}", fmt::join(parts, " AND "), output, r.consequent);
}

void explain(std::ostream& out, const FuzzyInferenceSystem& fis, std::span<const double> inputs,
             const std::string& label) {
  const auto w = fis.fire_strengths(inputs);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) {
      out << fmt::format("  [{}] rule {:>2}: {}  strength={:.6g}\n", label, i + 1,
                         describe_rule(fis.rules()[i], fis.output().name()), w[i]);
    }
  }
}

std::pair<DriverId, std::string> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw DomainError(fmt::format("'{}' must look like driver=value", s));
  const auto id = parse_driver(s.substr(0, eq));
  if (!id) throw DomainError(fmt::format("unknown cost driver '{}'", s.substr(0, eq)));
  return {*id, s.substr(eq + 1)};
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(fmt::format("cannot write '{}'", path.string()));
  f << content;
  if (!f.flush()) throw Error(fmt::format("failed writing '{}'", path.string()));
}

// ---------------------------------------------------------------------------

struct EstimateArgs {
  double size = 0.0;
  std::string mode;
  std::vector<std::string> ratings;
  std::vector<std::string> measures;
  bool explain = false;
};

void cmd_estimate(const Globals& g, const FisOptions& f, bool resolution_set, const EstimateArgs& a,
                  std::ostream& out) {
  const auto table = driver_table(g);
  const auto loaded = obtain_estimator(g, f, resolution_set);

  std::optional<Mode> mode = parse_mode(a.mode);
  double mode_value = 0.0;
  if (mode) {
    mode_value = mode_axis_value(*mode);
  } else if (auto v = text::parse_double(a.mode)) {
    mode_value = *v;
    for (Mode m : kAllModes) {
      if (mode_axis_value(m) == *v) mode = m;
    }
  } else {
    throw DomainError(fmt::format("mode '{}' is neither organic, semidetached, embedded nor a number", a.mode));
  }

  Ratings ratings = all_nominal();
  auto inputs = driver_inputs(table, ratings);
  bool measured = false;
  for (const auto& s : a.ratings) {
    const auto [id, value] = split_assignment(s);
    const auto r = parse_rating(value);
    if (!r) throw InvalidRatingError(display_name(id), value);
    ratings[index_of(id)] = *r;
    inputs[index_of(id)] = driver_input(table.driver(id), *r);
  }
  for (const auto& s : a.measures) {
    const auto [id, value] = split_assignment(s);
    const auto v = text::parse_double(value);
    if (!v) throw DomainError(fmt::format("{} measurement '{}' is not a number", display_name(id), value));
    inputs[index_of(id)] = *v;
    measured = true;
  }

  const auto e = loaded.estimator.estimate(mode_value, a.size, inputs);
  std::string report;
  report += fmt::format("size: {} KDSI\n", text::format_double(a.size));
  report += fmt::format("mode: {} (B axis {})\n", mode ? std::string(to_string(*mode)) : "blended",
                        text::format_double(mode_value));
  report += fmt::format("fuzzy nominal effort: {:.2f} PM\n", e.nominal_pm);
  report += fmt::format("fuzzy EAF: {:.4f}\n", e.eaf);
  report += fmt::format("fuzzy total effort: {:.2f} PM\n", e.total_pm);
  if (mode) {
    const double nominal = nominal_effort(*mode, a.size);
    report += fmt::format("crisp COCOMO nominal effort: {:.2f} PM\n", nominal);
    if (measured) {
      report += "crisp COCOMO EAF: n/a (measured driver inputs)\n";
    } else {
      const double f_crisp = eaf(table, ratings);
      report += fmt::format("crisp COCOMO EAF: {:.4f}\n", f_crisp);
      report += fmt::format("crisp COCOMO total effort: {:.2f} PM\n", nominal * f_crisp);
    }
  } else {
    report += "crisp COCOMO: n/a (mode value between categories)\n";
  }
  out << report;

  if (a.explain) {
    out << "rule firing strengths (rules with zero strength omitted):\n";
    const std::array<double, 2> nin{mode_value, a.size};
    explain(out, loaded.estimator.nominal_fis(), nin, "nominal");
    for (DriverId id : kAllDrivers) {
      const std::array<double, 1> din{inputs[index_of(id)]};
      explain(out, loaded.estimator.driver_fis(id), din, display_name(id));
    }
  }
  if (!g.out.empty()) write_file(g.out, "# " + header_line(g, loaded.config) + "\n" + report);
}

void cmd_build_fis(const Globals& g, const FisOptions& f, std::ostream& out) {
  const auto config = make_config(g, f);
  const auto table = driver_table(g);
  const fs::path dir = g.out.empty() ? fs::path("fis") : fs::path(g.out);
  const FisFileHeader header{tool_version(), g.seed, config.describe()};

  const auto nominal = synthesize_nominal_fis(config);
  write_file(nominal_path(dir), serialize_fis(nominal, header));
  out << fmt::format("wrote {} ({} rules)\n", nominal_path(dir).string(), nominal.rules().size());
  for (const auto& d : table.drivers()) {
    const auto fis = build_driver_fis(make_driver_spec(d), d, config.resolution);
    write_file(driver_path(dir, d.id), serialize_fis(fis, header));
  }
  out << fmt::format("wrote {} driver FIS files under {}\n", kDriverCount, (dir / "drivers").string());
}

void cmd_evaluate(const Globals& g, const FisOptions& f, bool resolution_set, const std::string& dataset_path,
                  std::ostream& out) {
  const auto table = driver_table(g);
  const auto range = size_range(g);
  const auto dataset = load_dataset_file(dataset_path);
  const auto loaded = obtain_estimator(g, f, resolution_set);

  ExperimentResult r;
  r.range = range;
  r.projects = filter_by_size(dataset, range);
  r.excluded = dataset.size() - r.projects.size();
  if (r.projects.empty()) {
    throw DomainError(fmt::format("no project of '{}' lies in [{}, {}] KDSI", dataset_path,
                                  text::format_double(range.lo), text::format_double(range.hi)));
  }
  auto base = evaluate_cocomo(r.projects, table);
  r.cocomo_nominal = std::move(base.nominal);
  r.cocomo_total = std::move(base.total);
  const auto tag = tag_of(loaded.estimator);
  auto fuzzy = evaluate_estimator(r.projects, table, loaded.estimator, tag);
  const auto& size = loaded.estimator.nominal_fis().inputs().at(1);
  r.configurations.push_back({size.terms().front().mf.shape() == Shape::gaussian ? PartitionShape::gaussian
                                                                                   : PartitionShape::triangular,
                              size.size(), tag, std::move(fuzzy.nominal), std::move(fuzzy.total)});

  const auto header = header_line(g, fmt::format("dataset={} {}", dataset_path, loaded.config));
  const auto summary = summary_text(r);
  const fs::path dir = g.out.empty() ? fs::path("evaluation") : fs::path(g.out);
  write_file(dir / "summary.txt", "# " + header + "\n" + summary);

  DataTable projects{"projects",
                     "Per-project predictions",
                     {"id", "kdsi", "mode", "actual_pm", "actual_nominal_pm", "cocomo_nominal_pm", "cocomo_total_pm",
                      "fis_nominal_pm", "fis_total_pm", "fis_nominal_mre", "fis_total_mre"},
                     {}};
  const auto& c = r.configurations.front();
  for (std::size_t i = 0; i < r.projects.size(); ++i) {
    const auto& p = r.projects[i];
    projects.rows.push_back({p.id, text::format_double(p.kdsi), std::string(to_string(p.mode)),
                             text::format_double(p.actual_pm), text::format_double(c.nominal.pairs[i].actual),
                             text::format_double(r.cocomo_nominal.pairs[i].predicted),
                             text::format_double(r.cocomo_total.pairs[i].predicted),
                             text::format_double(c.nominal.pairs[i].predicted),
                             text::format_double(c.total.pairs[i].predicted), text::format_double(c.nominal.mres[i]),
                             text::format_double(c.total.mres[i])});
  }
  std::ostringstream table_text;
  const std::vector<std::string> lines{header};
  write_table(table_text, projects, lines);
  write_file(dir / "projects.csv", table_text.str());
  out << summary;
}

void cmd_replicate(const Globals& g, const FisOptions& f, const std::string& dataset_path, bool sequential,
                   std::ostream& out) {
  const auto table = driver_table(g);
  const auto dataset = load_dataset_file(dataset_path);

  ExperimentOptions options;
  options.range = size_range(g);
  options.base = make_config(g, f);
  options.parallel = !sequential;
  const auto result = run_experiment(dataset, table, options);

  auto config = options.base.describe();
  // The per-configuration shape and count replace the template's.
  config = fmt::format("dataset={} matrix=tmf,gmf x 3,5,7 {}", dataset_path,
                       config.substr(config.find(' ', config.find("shape=")) + 1));
  const std::vector<std::string> header{header_line(g, config)};
  const fs::path dir = g.out.empty() ? fs::path("replicate") : fs::path(g.out);
  for (const auto& t : figure_tables(result)) {
    std::ostringstream s;
    write_table(s, t, header);
    write_file(dir / (t.name + ".csv"), s.str());
  }
  const auto summary = summary_text(result);
  write_file(dir / "summary.txt", "# " + header.front() + "\n" + summary);
  out << summary;
  out << fmt::format("wrote 9 figure tables, table4.csv and summary.txt to {}\n", dir.string());
}

void add_fis_options(CLI::App* cmd, FisOptions& f, bool with_dir) {
  cmd->add_option("--mf-count", f.mf_count, "Number of size membership functions (>= 2)");
  cmd->add_option("--shape", f.shape, "Size partition shape: triangular|gaussian (tmf|gmf)");
  cmd->add_option("--source", f.source, "Rule examples: analytic|random");
  cmd->add_option("--samples", f.samples, "Artificial dataset size for --source random");
  if (with_dir) cmd->add_option("--fis-dir", f.fis_dir, "Load FIS files written by build-fis instead of synthesizing");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy COCOMO effort estimation", "fuzzyest"};
  app.set_version_flag("--version", tool_version());
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--seed", g.seed, "Random seed (recorded in every output header)");
  auto* res_opt = app.add_option("--defuzz-resolution", g.resolution, "Centroid grid points (>= 101)");
  app.add_option("--range", g.range_text, "Size range lo:hi in KDSI (default 1:100)");
  app.add_option("--out", g.out, "Output file (estimate) or directory (other commands)");
  app.add_option("--drivers", g.drivers_path, "Cost driver table CSV (default: built-in table)");

  FisOptions fis;
  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate one project");
  estimate->add_option("--size", est.size, "Size in KDSI")->required();
  estimate->add_option("--mode", est.mode, "organic|semidetached|embedded or a B-axis value")->required();
  estimate->add_option("--rating", est.ratings, "Driver rating, e.g. stor=h (repeatable)");
  estimate->add_option("--measure", est.measures, "Driver crisp input, e.g. stor=75 (repeatable)");
  estimate->add_flag("--explain", est.explain, "Print rule firing strengths");
  add_fis_options(estimate, fis, true);

  auto* build = app.add_subcommand("build-fis", "Write the nominal and driver FIS files");
  add_fis_options(build, fis, false);

  std::string dataset;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate an estimator on a dataset");
  evaluate_cmd->add_option("--dataset", dataset, "Project dataset CSV")->required();
  add_fis_options(evaluate_cmd, fis, true);

  bool sequential = false;
  FisOptions replicate_fis;
  replicate_fis.source = "random";
  auto* replicate = app.add_subcommand("replicate", "Run the TMF/GMF x 3,5,7 experiment matrix");
  replicate->add_option("--dataset", dataset, "Project dataset CSV")->required();
  replicate->add_option("--source", replicate_fis.source, "Rule examples: analytic|random (default random)");
  replicate->add_option("--samples", replicate_fis.samples, "Artificial dataset size for --source random");
  replicate->add_flag("--sequential", sequential, "Run configurations one after another");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const bool resolution_set = res_opt->count() > 0;
    if (resolution_set && g.resolution < kMinDefuzzResolution) {
      throw DomainError(fmt::format("--defuzz-resolution must be at least {}", kMinDefuzzResolution));
    }
    if (estimate->parsed()) cmd_estimate(g, fis, resolution_set, est, out);
    if (build->parsed()) cmd_build_fis(g, fis, out);
    if (evaluate_cmd->parsed()) cmd_evaluate(g, fis, resolution_set, dataset, out);
    if (replicate->parsed()) cmd_replicate(g, replicate_fis, dataset, sequential, out);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << '\n';
    return 1;
  }
  return 0;
}

}  // namespace fuzzyest::cli
