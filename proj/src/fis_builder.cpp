#include "fuzzyest/fis_builder.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "fuzzyest/errors.hpp"
#include "fuzzyest/text.hpp"

namespace fuzzyest {

namespace {

constexpr double kPercentLo = 0.0;
constexpr double kPercentHi = 100.0;
// Effort universe margin, in consequent sigmas, beyond the outermost centres.
constexpr double kUniverseMarginSigmas = 4.0;

std::string consequent_term_name(std::size_t mode_index, std::size_t size_index) {
  return fmt::format("e{}_{}", mode_index + 1, size_index + 1);
}

double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Consequent centres per mode (row) and size term (column).
using CentreGrid = std::array<std::vector<double>, 3>;

FuzzyInferenceSystem assemble_nominal(const NominalFisConfig& config, const LinguisticVariable& size,
                                      const CentreGrid& centres) {
  const std::size_t n = config.size_terms;

  std::vector<Term> mode_terms;
  for (Mode m : kAllModes) {
    mode_terms.push_back(
        {std::string(to_string(m)), MembershipFunction::gaussian(mode_axis_value(m), config.mode_sigma)});
  }
  LinguisticVariable mode("mode", config.mode_universe, std::move(mode_terms));

  CentreGrid sigmas;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& row = centres[j];
    sigmas[j].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      double gap = std::numeric_limits<double>::infinity();
      if (i > 0) gap = std::min(gap, std::abs(row[i] - row[i - 1]));
      if (i + 1 < n) gap = std::min(gap, std::abs(row[i + 1] - row[i]));
      sigmas[j][i] = std::max(config.relative_width * row[i], config.width_scale * gap);
      lo = std::min(lo, row[i] - kUniverseMarginSigmas * sigmas[j][i]);
      hi = std::max(hi, row[i] + kUniverseMarginSigmas * sigmas[j][i]);
    }
  }
  const Interval effort_universe = config.effort_universe.value_or(Interval{lo, hi});

  std::vector<Term> effort_terms;
  std::vector<Rule> rules;
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      auto name = consequent_term_name(j, i);
      effort_terms.push_back({name, MembershipFunction::gaussian(centres[j][i], sigmas[j][i])});
      rules.push_back({{{"mode", std::string(to_string(kAllModes[j]))}, {"size", size.terms()[i].name}}, name});
    }
  }
  // Rules ordered size-major so the listing reads s1 for every mode, then s2, ...
  std::stable_sort(rules.begin(), rules.end(), [&](const Rule& a, const Rule& b) {
    return *size.find(a.antecedents[1].second) < *size.find(b.antecedents[1].second);
  });
  LinguisticVariable effort("effort", effort_universe, std::move(effort_terms));
  return {"nominal", {std::move(mode), size}, std::move(effort), std::move(rules), Operators{}, config.resolution};
}

LinguisticVariable size_partition(const NominalFisConfig& config) {
  return make_partition("size", config.size_universe, config.size_terms, config.shape);
}

}  // namespace

std::string_view to_string(SampleSource s) noexcept { return s == SampleSource::analytic ? "analytic" : "random"; }

SampleSource sample_source_from_string(std::string_view s) {
  if (s == "analytic") return SampleSource::analytic;
  if (s == "random") return SampleSource::random;
  throw ParseError(0, fmt::format("unknown sample source '{}' (expected analytic or random)", s));
}

void NominalFisConfig::validate() const {
  if (size_terms < 2) {
    throw InvalidPartitionError(fmt::format("size needs at least 2 membership functions, got {}", size_terms));
  }
  if (!(size_universe.lo > 0.0 && size_universe.lo < size_universe.hi)) {
    throw DomainError(fmt::format("size universe [{}, {}] must be a nonempty range of positive sizes",
                                  size_universe.lo, size_universe.hi));
  }
  if (!(mode_universe.lo < mode_universe.hi)) throw DomainError("mode universe is empty");
  for (Mode m : kAllModes) {
    if (!mode_universe.contains(mode_axis_value(m))) {
      throw DomainError(fmt::format("mode universe [{}, {}] does not contain the {} value {}", mode_universe.lo,
                                    mode_universe.hi, to_string(m), mode_axis_value(m)));
    }
  }
  if (!(mode_sigma > 0.0)) throw DomainError("mode sigma must be positive");
  if (effort_universe && !(effort_universe->lo < effort_universe->hi)) throw DomainError("effort universe is empty");
  if (!(relative_width > 0.0) || !(width_scale >= 0.0)) throw DomainError("consequent width parameters must be positive");
  if (source == SampleSource::random && sample_count == 0) throw DomainError("sample count must be at least 1");
  if (resolution < kMinDefuzzResolution) {
    throw DomainError(fmt::format("defuzzification resolution must be at least {}", kMinDefuzzResolution));
  }
}

std::string NominalFisConfig::describe() const {
  std::string s = fmt::format("mf_count={} shape={} size_universe={}:{} mode_universe={}:{} mode_sigma={}",
                              size_terms, to_string(shape), text::format_double(size_universe.lo),
                              text::format_double(size_universe.hi), text::format_double(mode_universe.lo),
                              text::format_double(mode_universe.hi), text::format_double(mode_sigma));
  if (effort_universe) {
    s += fmt::format(" effort_universe={}:{}", text::format_double(effort_universe->lo),
                     text::format_double(effort_universe->hi));
  }
  s += fmt::format(" relative_width={} width_scale={} source={}", text::format_double(relative_width),
                   text::format_double(width_scale), to_string(source));
  if (source == SampleSource::random) s += fmt::format(" samples={} seed={}", sample_count, seed);
  s += fmt::format(" defuzz_resolution={}", resolution);
  return s;
}

std::vector<ArtificialSample> generate_artificial_dataset(std::size_t count, Interval size_range,
                                                          std::uint64_t seed) {
  if (count == 0) throw DomainError("artificial dataset size must be at least 1");
  if (!(size_range.lo > 0.0 && size_range.lo < size_range.hi)) {
    throw DomainError(
        fmt::format("size range [{}, {}] must be nonempty and positive", size_range.lo, size_range.hi));
  }
  std::mt19937_64 gen(seed);
  std::vector<ArtificialSample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double kdsi = std::min(size_range.hi, size_range.lo + unit_uniform(gen) * size_range.width());
    const auto m = std::min<std::size_t>(2, static_cast<std::size_t>(unit_uniform(gen) * 3.0));
    out.push_back({kdsi, kAllModes[m], nominal_effort(kAllModes[m], kdsi)});
  }
  return out;
}

FuzzyInferenceSystem synthesize_nominal_fis(const NominalFisConfig& config) {
  config.validate();
  if (config.source == SampleSource::random) {
    const auto samples = generate_artificial_dataset(config.sample_count, config.size_universe, config.seed);
    return synthesize_nominal_fis(config, samples);
  }
  const auto size = size_partition(config);
  CentreGrid centres;
  for (std::size_t j = 0; j < 3; ++j) {
    for (const auto& t : size.terms()) centres[j].push_back(nominal_effort(kAllModes[j], t.mf.peak()));
  }
  return assemble_nominal(config, size, centres);
}

FuzzyInferenceSystem synthesize_nominal_fis(const NominalFisConfig& config,
                                            std::span<const ArtificialSample> samples) {
  config.validate();
  const auto size = size_partition(config);
  const std::size_t n = config.size_terms;

  CentreGrid centres;
  std::array<std::vector<double>, 3> best_degree;
  for (std::size_t j = 0; j < 3; ++j) {
    for (const auto& t : size.terms()) centres[j].push_back(nominal_effort(kAllModes[j], t.mf.peak()));
    best_degree[j].assign(n, 0.0);
  }
  // Modes are categorical in the samples, so a sample always sits at its mode
  // term's peak and the cell degree reduces to the size degree.
  for (const auto& s : samples) {
    if (!config.size_universe.contains(s.kdsi)) continue;
    const auto j = static_cast<std::size_t>(s.mode);
    const auto d = size.degrees(s.kdsi);
    const auto i = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
    if (d[i] > best_degree[j][i]) {
      best_degree[j][i] = d[i];
      centres[j][i] = s.effort;
    }
  }
  return assemble_nominal(config, size, centres);
}

// ---------------------------------------------------------------------------

std::string_view level_term_name(Rating r) noexcept {
  switch (r) {
    case Rating::very_low:
      return "vlow";
    case Rating::low:
      return "low";
    case Rating::nominal:
      return "nom";
    case Rating::high:
      return "high";
    case Rating::very_high:
      return "vhigh";
    case Rating::extra_high:
      return "xhigh";
  }
  return "unknown";
}

double driver_input(const CostDriver& driver, Rating r) {
  if (!driver.defines(r)) throw InvalidRatingError(display_name(driver.id), std::string(to_token(r)));
  if (driver.has_measured_scale()) return driver.anchors.at(r);
  return static_cast<double>(rating_index(r));
}

DriverFisSpec make_driver_spec(const CostDriver& driver) {
  std::vector<Rating> levels;
  std::vector<double> positions;
  for (const auto& [r, _] : driver.multipliers) {
    levels.push_back(r);
    positions.push_back(driver_input(driver, r));
  }
  const std::size_t k = levels.size();

  // Antecedent: Ruspini partition through the level positions. On the percent
  // axis the outer levels become shoulders reaching the axis ends.
  std::vector<Term> ant_terms;
  Interval ant_universe;
  if (driver.has_measured_scale()) {
    ant_universe = {std::min(kPercentLo, positions.front()), std::max(kPercentHi, positions.back())};
    for (std::size_t i = 0; i < k; ++i) {
      MembershipFunction mf =
          i == 0       ? MembershipFunction::trapezoidal(ant_universe.lo, ant_universe.lo, positions[0], positions[1])
          : i + 1 == k ? MembershipFunction::trapezoidal(positions[k - 2], positions[k - 1], ant_universe.hi,
                                                          ant_universe.hi)
                       : MembershipFunction::triangular(positions[i - 1], positions[i], positions[i + 1]);
      ant_terms.push_back({std::string(level_term_name(levels[i])), mf});
    }
  } else {
    ant_universe = {positions.front(), positions.back()};
    for (std::size_t i = 0; i < k; ++i) {
      ant_terms.push_back({std::string(level_term_name(levels[i])),
                           MembershipFunction::triangular(positions[i] - 1.0, positions[i], positions[i] + 1.0)});
    }
  }

  // Consequent: narrow symmetric triangles at the table multipliers, half-width
  // half the smallest gap between multipliers, so neighbours never overlap.
  std::vector<double> sorted;
  for (const auto& [_, m] : driver.multipliers) sorted.push_back(m);
  std::sort(sorted.begin(), sorted.end());
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) min_gap = std::min(min_gap, sorted[i] - sorted[i - 1]);
  const double half_width = 0.5 * min_gap;

  // "unchanged" for 1.0; inc / incsig / incdra by growing distance above 1,
  // dec / decsig / decdra below.
  static constexpr std::array<std::string_view, 3> kSuffixes{"", "sig", "dra"};
  std::map<Rating, std::string> cons_names;
  for (bool above : {true, false}) {
    std::vector<std::pair<double, Rating>> side;
    for (const auto& [r, m] : driver.multipliers) {
      if (above ? m > 1.0 : m < 1.0) side.emplace_back(std::abs(m - 1.0), r);
    }
    std::sort(side.begin(), side.end());
    for (std::size_t i = 0; i < side.size(); ++i) {
      std::string name = above ? "inc" : "dec";
      if (i < kSuffixes.size()) {
        name += kSuffixes[i];
      } else {
        name += fmt::format("dra_{}", to_token(side[i].second));
      }
      cons_names[side[i].second] = std::move(name);
    }
  }
  cons_names[Rating::nominal] = "unchanged";

  const Interval cons_universe{driver.min_multiplier(), driver.max_multiplier()};
  std::vector<Term> cons_terms;
  std::vector<Rule> rules;
  for (Rating r : levels) {
    const double m = driver.multipliers.at(r);
    cons_terms.push_back({cons_names.at(r), MembershipFunction::triangular(m - half_width, m, m + half_width)});
    rules.push_back({{{std::string(to_token(driver.id)), std::string(level_term_name(r))}}, cons_names.at(r)});
  }
  return {driver.id,
          LinguisticVariable(std::string(to_token(driver.id)), ant_universe, std::move(ant_terms)),
          LinguisticVariable("effort", cons_universe, std::move(cons_terms)), std::move(rules)};
}

FuzzyInferenceSystem build_driver_fis(const DriverFisSpec& spec, const CostDriver& driver, std::size_t resolution) {
  const auto name = display_name(driver.id);
  if (spec.id != driver.id) {
    throw ValidationError(fmt::format("driver spec for {} used with the {} table", display_name(spec.id), name));
  }
  if (spec.rules.size() != driver.multipliers.size() || spec.antecedent.size() != driver.multipliers.size()) {
    throw ValidationError(fmt::format("{}: spec needs one antecedent term and one rule per defined level", name));
  }
  for (const auto& [r, m] : driver.multipliers) {
    const auto level = level_term_name(r);
    auto rule = std::find_if(spec.rules.begin(), spec.rules.end(),
                             [&](const Rule& x) { return x.antecedents.size() == 1 && x.antecedents[0].second == level; });
    if (rule == spec.rules.end()) throw ValidationError(fmt::format("{}: no rule for level '{}'", name, level));
    const auto cons = spec.consequent.find(rule->consequent);
    if (!cons) throw ValidationError(fmt::format("{}: unknown consequent '{}'", name, rule->consequent));
    const double peak = spec.consequent.terms()[*cons].mf.peak();
    if (std::abs(peak - m) > 1e-12) {
      throw ValidationError(
          fmt::format("{}: consequent '{}' peaks at {}, table multiplier is {}", name, rule->consequent, peak, m));
    }
  }
  return {std::string(to_token(driver.id)), {spec.antecedent}, spec.consequent, spec.rules, Operators{}, resolution};
}

DriverInputs driver_inputs(const CostDriverTable& table, const Ratings& ratings) {
  DriverInputs in{};
  for (DriverId id : kAllDrivers) in[index_of(id)] = driver_input(table.driver(id), ratings[index_of(id)]);
  return in;
}

// ---------------------------------------------------------------------------

EffortEstimator::EffortEstimator(FuzzyInferenceSystem nominal, std::vector<FuzzyInferenceSystem> drivers)
    : nominal_(std::move(nominal)) {
  const auto& in = nominal_.inputs();
  if (in.size() != 2 || in[0].name() != "mode" || in[1].name() != "size") {
    throw ValidationError("the nominal FIS must have exactly the inputs (mode, size)");
  }
  std::vector<std::optional<FuzzyInferenceSystem>> slots(kDriverCount);
  for (auto& fis : drivers) {
    const auto id = parse_driver(fis.name());
    if (!id) throw ValidationError(fmt::format("'{}' is not a cost driver FIS name", fis.name()));
    if (fis.inputs().size() != 1) {
      throw ValidationError(fmt::format("driver FIS '{}' must have exactly one input", fis.name()));
    }
    auto& slot = slots[index_of(*id)];
    if (slot) throw ValidationError(fmt::format("duplicate driver FIS '{}'", fis.name()));
    slot.emplace(std::move(fis));
  }
  for (DriverId id : kAllDrivers) {
    auto& slot = slots[index_of(id)];
    if (!slot) throw ValidationError(fmt::format("missing driver FIS for {}", display_name(id)));
    drivers_.push_back(std::move(*slot));
  }
}

EffortEstimator EffortEstimator::build(const NominalFisConfig& config, const CostDriverTable& table) {
  std::vector<FuzzyInferenceSystem> drivers;
  for (const auto& d : table.drivers()) drivers.push_back(build_driver_fis(make_driver_spec(d), d, config.resolution));
  return {synthesize_nominal_fis(config), std::move(drivers)};
}

double EffortEstimator::nominal(double mode_value, double kdsi) const {
  const std::array<double, 2> in{mode_value, kdsi};
  return nominal_.infer(in);
}

FuzzyEstimate EffortEstimator::estimate(double mode_value, double kdsi, const DriverInputs& inputs) const {
  FuzzyEstimate e{};
  e.nominal_pm = nominal(mode_value, kdsi);
  e.eaf = 1.0;
  for (std::size_t i = 0; i < kDriverCount; ++i) {
    const std::array<double, 1> in{inputs[i]};
    e.multipliers[i] = drivers_[i].infer(in);
    e.eaf *= e.multipliers[i];
  }
  e.total_pm = e.nominal_pm * e.eaf;
  return e;
}

FuzzyEstimate EffortEstimator::estimate(const ProjectRecord& project, const CostDriverTable& table) const {
  return estimate(mode_axis_value(project.mode), project.kdsi, driver_inputs(table, project.ratings));
}

double fuzzy_total_effort(const FuzzyInferenceSystem& nominal, const std::map<DriverId, FuzzyInferenceSystem>& drivers,
                          const ProjectRecord& project, const CostDriverTable& table) {
  const std::array<double, 2> in{mode_axis_value(project.mode), project.kdsi};
  double total = nominal.infer(in);
  for (DriverId id : kAllDrivers) {
    auto it = drivers.find(id);
    if (it == drivers.end()) throw ValidationError(fmt::format("missing driver FIS for {}", display_name(id)));
    const std::array<double, 1> x{driver_input(table.driver(id), project.ratings[index_of(id)])};
    total *= it->second.infer(x);
  }
  return total;
}

}  // namespace fuzzyest
