#include <array>
#include <cmath>
#include <set>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "fuzzyest/errors.hpp"
#include "fuzzyest/fis_builder.hpp"

namespace fuzzyest {
namespace {

const CostDriverTable& table() { return CostDriverTable::builtin(); }

double infer1(const FuzzyInferenceSystem& fis, double x) {
  const std::array<double, 1> in{x};
  return fis.infer(in);
}

double infer2(const FuzzyInferenceSystem& fis, double mode, double size) {
  const std::array<double, 2> in{mode, size};
  return fis.infer(in);
}

NominalFisConfig config(PartitionShape shape, std::size_t n) {
  NominalFisConfig c;
  c.shape = shape;
  c.size_terms = n;
  return c;
}

const FuzzyInferenceSystem& stor_fis() {
  static const auto fis = build_driver_fis(make_driver_spec(table().driver(DriverId::stor)), table().driver(DriverId::stor));
  return fis;
}

TEST(NominalFis, ConsequentCentreForThreeTerms) {
  const auto fis = synthesize_nominal_fis(config(PartitionShape::gaussian, 3));
  const auto& term = fis.output().term("e1_2");  // organic, s2 (centre 50.5)
  // 3.2 * 50.5^1.05 evaluated independently; rounds to 196.6.
  EXPECT_NEAR(term.mf.peak(), 196.61014584174654, 1e-9);
}

TEST(NominalFis, RuleCountIsThreeTimesN) {
  for (std::size_t n : {2u, 3u, 5u, 7u, 9u}) {
    for (auto shape : {PartitionShape::triangular, PartitionShape::gaussian}) {
      EXPECT_EQ(synthesize_nominal_fis(config(shape, n)).rules().size(), 3 * n);
    }
  }
}

TEST(NominalFis, InteriorCentresWithinFivePercent) {
  for (auto shape : {PartitionShape::triangular, PartitionShape::gaussian}) {
    for (std::size_t n : {3u, 5u, 7u}) {
      const auto fis = synthesize_nominal_fis(config(shape, n));
      const auto& size = fis.inputs()[1];
      for (std::size_t i = 1; i + 1 < n; ++i) {
        const double s = size.terms()[i].mf.peak();
        const double crisp = nominal_effort(Mode::organic, s);
        EXPECT_NEAR(infer2(fis, mode_axis_value(Mode::organic), s), crisp, 0.05 * crisp)
            << to_string(shape) << " n=" << n << " s" << i + 1;
      }
    }
  }
}

TEST(NominalFis, InputsAndNames) {
  const auto fis = synthesize_nominal_fis(config(PartitionShape::gaussian, 5));
  ASSERT_EQ(fis.inputs().size(), 2u);
  EXPECT_EQ(fis.inputs()[0].name(), "mode");
  EXPECT_EQ(fis.inputs()[1].name(), "size");
  EXPECT_EQ(fis.output().name(), "effort");
  EXPECT_EQ(fis.inputs()[0].universe(), (Interval{1.0, 1.25}));
  EXPECT_DOUBLE_EQ(fis.inputs()[0].term("embedded").mf.peak(), 1.20);
  EXPECT_EQ(fis.rules().front().antecedents[0], (std::pair<std::string, std::string>{"mode", "organic"}));
}

TEST(NominalFis, ConfigValidation) {
  EXPECT_THROW(synthesize_nominal_fis(config(PartitionShape::gaussian, 1)), InvalidPartitionError);
  auto c = config(PartitionShape::gaussian, 3);
  c.mode_universe = {1.0, 1.15};
  EXPECT_THROW(c.validate(), DomainError);
  c = config(PartitionShape::gaussian, 3);
  c.size_universe = {0.0, 100.0};
  EXPECT_THROW(c.validate(), DomainError);
  c = config(PartitionShape::gaussian, 3);
  c.resolution = 100;
  EXPECT_THROW(c.validate(), DomainError);
  c = config(PartitionShape::gaussian, 3);
  c.source = SampleSource::random;
  c.sample_count = 0;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(ArtificialDataset, ContractHolds) {
  EXPECT_THROW(generate_artificial_dataset(0, {1.0, 100.0}, 1), DomainError);
  EXPECT_THROW(generate_artificial_dataset(5, {10.0, 10.0}, 1), DomainError);
  EXPECT_THROW(generate_artificial_dataset(5, {20.0, 10.0}, 1), DomainError);
  EXPECT_EQ(generate_artificial_dataset(1, {1.0, 100.0}, 42), generate_artificial_dataset(1, {1.0, 100.0}, 42));
  const auto a = generate_artificial_dataset(2000, {1.0, 100.0}, 7);
  EXPECT_NE(a, generate_artificial_dataset(2000, {1.0, 100.0}, 8));
  std::array<int, 3> per_mode{};
  for (const auto& s : a) {
    EXPECT_GE(s.kdsi, 1.0);
    EXPECT_LE(s.kdsi, 100.0);
    EXPECT_EQ(s.effort, nominal_effort(s.mode, s.kdsi));
    ++per_mode[static_cast<std::size_t>(s.mode)];
  }
  for (int c : per_mode) EXPECT_GT(c, 500);  // roughly uniform over modes
}

TEST(WangMendel, HighestDegreeSampleWinsAndEmptyCellsUseCentres) {
  const auto c = config(PartitionShape::triangular, 3);  // centres 1, 50.5, 100
  const std::vector<ArtificialSample> samples{
      {40.0, Mode::organic, 111.0},    // degree 0.79 in s2
      {50.0, Mode::organic, 222.0},    // degree 0.99 in s2, wins
      {45.0, Mode::organic, 333.0},
      {99.0, Mode::embedded, 444.0},   // s3 of embedded
  };
  const auto fis = synthesize_nominal_fis(c, samples);
  EXPECT_DOUBLE_EQ(fis.output().term("e1_2").mf.peak(), 222.0);
  EXPECT_DOUBLE_EQ(fis.output().term("e3_3").mf.peak(), 444.0);
  EXPECT_DOUBLE_EQ(fis.output().term("e2_2").mf.peak(), nominal_effort(Mode::semidetached, 50.5));
  EXPECT_DOUBLE_EQ(fis.output().term("e1_1").mf.peak(), nominal_effort(Mode::organic, 1.0));
}

TEST(WangMendel, RandomSourceIsSeedDeterministic) {
  auto c = config(PartitionShape::gaussian, 5);
  c.source = SampleSource::random;
  c.sample_count = 300;
  c.seed = 99;
  EXPECT_EQ(synthesize_nominal_fis(c), synthesize_nominal_fis(c));
  // Each consequent comes from a sample inside its own size cell, so it lies
  // between the crisp efforts at the cell boundaries.
  const auto random = synthesize_nominal_fis(c);
  const auto& size = random.inputs()[1];
  const double half = 0.5 * (size.terms()[1].mf.peak() - size.terms()[0].mf.peak());
  for (std::size_t j = 0; j < 3; ++j) {
    const auto mode = static_cast<Mode>(j);
    for (std::size_t i = 0; i < size.size(); ++i) {
      const double centre = size.terms()[i].mf.peak();
      const double peak = random.output().term(fmt::format("e{}_{}", j + 1, i + 1)).mf.peak();
      EXPECT_GE(peak, nominal_effort(mode, std::max(1.0, centre - half)));
      EXPECT_LE(peak, nominal_effort(mode, std::min(100.0, centre + half)));
    }
  }
}

TEST(DriverFis, StorAnchors) {
  EXPECT_NEAR(infer1(stor_fis(), 50.0), 1.00, 0.03);
  EXPECT_NEAR(infer1(stor_fis(), 70.0), 1.06, 0.02);
  EXPECT_NEAR(infer1(stor_fis(), 85.0), 1.21, 0.03);
  EXPECT_NEAR(infer1(stor_fis(), 95.0), 1.56, 0.03);
}

// Direct Mamdani evaluation on a 100001-point grid, written independently of
// the library's inference code: min implication, max aggregation, centroid.
double dense_mamdani(const DriverFisSpec& spec, double x) {
  const auto& u = spec.consequent.universe();
  const int n = 100001;
  double num = 0.0, den = 0.0;
  for (int k = 0; k < n; ++k) {
    const double y = u.lo + u.width() * k / (n - 1);
    double mu = 0.0;
    for (const auto& r : spec.rules) {
      const double w = spec.antecedent.term(r.antecedents[0].second).mf(x);
      mu = std::max(mu, std::min(w, spec.consequent.term(r.consequent).mf(y)));
    }
    num += y * mu;
    den += mu;
  }
  return num / den;
}

TEST(DriverFis, StorInterpolatesBetweenNominalAndHigh) {
  const double y = infer1(stor_fis(), 60.0);
  EXPECT_GT(y, 1.0);
  EXPECT_LT(y, 1.06);
  EXPECT_NEAR(y, dense_mamdani(make_driver_spec(table().driver(DriverId::stor)), 60.0), 1e-3);
}

TEST(DriverFis, StorSpecLayout) {
  const auto spec = make_driver_spec(table().driver(DriverId::stor));
  EXPECT_EQ(spec.antecedent.universe(), (Interval{0.0, 100.0}));
  EXPECT_EQ(spec.antecedent.term("nom").mf, MembershipFunction::trapezoidal(0.0, 0.0, 50.0, 70.0));
  EXPECT_EQ(spec.antecedent.term("high").mf, MembershipFunction::triangular(50.0, 70.0, 85.0));
  EXPECT_EQ(spec.antecedent.term("xhigh").mf, MembershipFunction::trapezoidal(85.0, 95.0, 100.0, 100.0));
  EXPECT_EQ(spec.consequent.universe(), (Interval{1.0, 1.56}));
  ASSERT_EQ(spec.rules.size(), 4u);
  EXPECT_EQ(spec.rules[0].consequent, "unchanged");
  EXPECT_EQ(spec.rules[1].consequent, "inc");
  EXPECT_EQ(spec.rules[2].consequent, "incsig");
  EXPECT_EQ(spec.rules[3].consequent, "incdra");
}

TEST(DriverFis, EveryDriverMatchesItsTable) {
  for (const auto& d : table().drivers()) {
    const auto spec = make_driver_spec(d);
    EXPECT_EQ(spec.rules.size(), d.multipliers.size()) << display_name(d.id);
    EXPECT_EQ(spec.antecedent.size(), d.multipliers.size());
    std::set<std::string> names;
    for (const auto& t : spec.consequent.terms()) names.insert(t.name);
    EXPECT_EQ(names.size(), d.multipliers.size()) << display_name(d.id);
    const auto fis = build_driver_fis(spec, d);
    for (const auto& [r, m] : d.multipliers) {
      const auto& rule = *std::find_if(spec.rules.begin(), spec.rules.end(), [&](const Rule& x) {
        return x.antecedents[0].second == level_term_name(r);
      });
      EXPECT_DOUBLE_EQ(spec.consequent.term(rule.consequent).mf.peak(), m);
      EXPECT_NEAR(infer1(fis, driver_input(d, r)), m, 0.03) << display_name(d.id) << " " << to_token(r);
    }
  }
}

TEST(DriverFis, DecreasingDriverNames) {
  const auto spec = make_driver_spec(table().driver(DriverId::acap));  // 1.46 1.19 1.00 .86 .71
  std::vector<std::string> got;
  for (const auto& r : spec.rules) got.push_back(r.consequent);
  EXPECT_EQ(got, (std::vector<std::string>{"incsig", "inc", "unchanged", "dec", "decsig"}));
}

TEST(DriverFis, MismatchedSpecRejected) {
  const auto& stor = table().driver(DriverId::stor);
  const auto& time = table().driver(DriverId::time);
  EXPECT_THROW(build_driver_fis(make_driver_spec(stor), time), ValidationError);
  auto spec = make_driver_spec(stor);
  auto terms = spec.consequent.terms();
  terms[1].mf = MembershipFunction::triangular(1.04, 1.07, 1.10);
  spec.consequent = LinguisticVariable("effort", spec.consequent.universe(), terms);
  EXPECT_THROW(build_driver_fis(spec, stor), ValidationError);
}

TEST(DriverFis, InputsForRatings) {
  EXPECT_EQ(driver_input(table().driver(DriverId::rely), Rating::high), 3.0);
  EXPECT_EQ(driver_input(table().driver(DriverId::stor), Rating::very_high), 85.0);
  EXPECT_THROW(driver_input(table().driver(DriverId::stor), Rating::low), InvalidRatingError);
}

TEST(Integration, AllNominalIsNearIdentity) {
  const auto est = EffortEstimator::build(config(PartitionShape::gaussian, 7), table());
  ProjectRecord p;
  p.kdsi = 32.0;
  const auto e = est.estimate(p, table());
  EXPECT_NEAR(e.eaf, 1.0, 0.05);
  EXPECT_NEAR(e.total_pm, e.nominal_pm * e.eaf, 1e-9);
  EXPECT_NEAR(e.total_pm, 121.77480857627866, 0.15 * 121.77480857627866);
}

TEST(Integration, RaisingStorRaisesEffort) {
  const auto est = EffortEstimator::build(config(PartitionShape::gaussian, 7), table());
  auto in = driver_inputs(table(), all_nominal());
  in[index_of(DriverId::stor)] = 70.0;
  const double low = est.estimate(1.05, 32.0, in).total_pm;
  in[index_of(DriverId::stor)] = 85.0;
  EXPECT_GT(est.estimate(1.05, 32.0, in).total_pm, low);
}

TEST(Integration, FreeFunctionMatchesEstimator) {
  const auto est = EffortEstimator::build(config(PartitionShape::triangular, 5), table());
  std::map<DriverId, FuzzyInferenceSystem> drivers;
  for (DriverId id : kAllDrivers) drivers.emplace(id, est.driver_fis(id));
  ProjectRecord p;
  p.kdsi = 12.5;
  p.mode = Mode::embedded;
  p.ratings[index_of(DriverId::cplx)] = Rating::extra_high;
  EXPECT_DOUBLE_EQ(fuzzy_total_effort(est.nominal_fis(), drivers, p, table()), est.estimate(p, table()).total_pm);
  drivers.erase(DriverId::tool);
  EXPECT_THROW(fuzzy_total_effort(est.nominal_fis(), drivers, p, table()), ValidationError);
}

TEST(Integration, EstimatorRequiresAllDrivers) {
  const auto est = EffortEstimator::build(config(PartitionShape::gaussian, 3), table());
  auto drivers = est.driver_fises();
  drivers.pop_back();
  EXPECT_THROW(EffortEstimator(est.nominal_fis(), drivers), ValidationError);
  drivers = est.driver_fises();
  drivers.push_back(drivers.front());
  EXPECT_THROW(EffortEstimator(est.nominal_fis(), drivers), ValidationError);
  EXPECT_THROW(EffortEstimator(est.driver_fis(DriverId::rely), est.driver_fises()), ValidationError);
}

TEST(Integration, OutOfRangeNamesVariable) {
  const auto est = EffortEstimator::build(config(PartitionShape::gaussian, 3), table());
  auto in = driver_inputs(table(), all_nominal());
  try {
    est.estimate(1.05, 200.0, in);
    FAIL();
  } catch (const OutOfRangeError& e) {
    EXPECT_EQ(e.variable(), "size");
  }
}

}  // namespace
}  // namespace fuzzyest
