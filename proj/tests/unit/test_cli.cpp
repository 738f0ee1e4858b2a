#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "fuzzyest/dataset.hpp"
#include "test_support.hpp"

namespace fuzzyest {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::string fixture() { return (testing::data_dir() / "sample_projects.csv").string(); }

TEST(Cli, EstimateSmallestProject) {
  const auto r = run({"estimate", "--size", "1", "--mode", "organic"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "crisp COCOMO nominal effort: 3.20 PM"));
  EXPECT_TRUE(contains(r.out, "crisp COCOMO total effort: 3.20 PM"));
  EXPECT_TRUE(contains(r.out, "fuzzy total effort:"));
}

TEST(Cli, EstimateWithRatingsAndExplain) {
  const auto r = run({"estimate", "--size", "32", "--mode", "organic", "--rating", "stor=h", "--explain"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "crisp COCOMO EAF: 1.0600"));
  EXPECT_TRUE(contains(r.out, "rule firing strengths"));
  EXPECT_TRUE(contains(r.out, "IF mode is organic AND size is"));
  EXPECT_TRUE(contains(r.out, "IF stor is high THEN effort is inc"));
}

TEST(Cli, EstimateWritesReportWithHeader) {
  testing::TempDir dir;
  const auto path = (dir.path() / "report.txt").string();
  const auto r = run({"--seed", "4", "--out", path, "estimate", "--size", "10", "--mode", "embedded"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto text = testing::read_file(path);
  EXPECT_EQ(text.rfind("# fuzzyest 1.0.0 | seed=4 | config=", 0), 0u);
  EXPECT_TRUE(contains(text, "units: size KDSI, effort person-months"));
}

TEST(Cli, EstimateErrors) {
  auto r = run({"estimate", "--size", "200", "--mode", "organic"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u);
  EXPECT_TRUE(contains(r.err, "size"));
  r = run({"estimate", "--size", "10", "--mode", "agile"});
  EXPECT_EQ(r.code, 1);
  r = run({"estimate", "--size", "10", "--mode", "organic", "--rating", "stor=l"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.err, "STOR"));
  r = run({"estimate", "--size", "10", "--mode", "organic", "--mf-count", "1"});
  EXPECT_EQ(r.code, 1);
  r = run({"--defuzz-resolution", "50", "estimate", "--size", "10", "--mode", "organic"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(run({"estimate", "--mode", "organic"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Cli, BuildFisThenEstimateFromFiles) {
  testing::TempDir dir;
  const auto out = (dir.path() / "fis").string();
  auto r = run({"--seed", "9", "--out", out, "build-fis", "--mf-count", "5", "--shape", "tmf"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir.path() / "fis" / "nominal.fis.json"));
  EXPECT_TRUE(fs::exists(dir.path() / "fis" / "drivers" / "stor.fis.json"));
  std::size_t drivers = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path() / "fis" / "drivers")) ++drivers;
  EXPECT_EQ(drivers, 15u);
  const auto first = testing::read_file(dir.path() / "fis" / "nominal.fis.json");
  EXPECT_TRUE(contains(first, "\"seed\": 9"));

  ASSERT_EQ(run({"--seed", "9", "--out", out, "build-fis", "--mf-count", "5", "--shape", "tmf"}).code, 0);
  EXPECT_EQ(testing::read_file(dir.path() / "fis" / "nominal.fis.json"), first);

  const auto direct = run({"estimate", "--size", "20", "--mode", "semidetached", "--mf-count", "5", "--shape", "tmf"});
  const auto loaded = run({"estimate", "--size", "20", "--mode", "semidetached", "--fis-dir", out});
  ASSERT_EQ(loaded.code, 0) << loaded.err;
  auto effort_line = [](const std::string& s) { return s.substr(s.find("fuzzy total effort")); };
  EXPECT_EQ(effort_line(direct.out).substr(0, 40), effort_line(loaded.out).substr(0, 40));

  EXPECT_EQ(run({"estimate", "--size", "20", "--mode", "organic", "--fis-dir", "/nonexistent"}).code, 1);
}

TEST(Cli, EvaluateOnExactProjects) {
  testing::TempDir dir;
  // Actuals equal the crisp COCOMO total, so the baseline is perfect.
  std::vector<ProjectRecord> rows(2);
  rows[0].id = "a";
  rows[0].kdsi = 10.0;
  rows[0].actual_pm = total_effort(CostDriverTable::builtin(), Mode::organic, 10.0, rows[0].ratings);
  rows[1].id = "big";
  rows[1].kdsi = 150.0;
  rows[1].actual_pm = 1000.0;
  std::ostringstream csv;
  write_dataset(csv, rows);
  testing::write_text(dir.path() / "d.csv", csv.str());

  const auto out = (dir.path() / "eval").string();
  const auto r = run({"--out", out, "evaluate", "--dataset", (dir.path() / "d.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "n=1"));
  EXPECT_TRUE(contains(r.out, "1 excluded"));
  EXPECT_TRUE(contains(r.out, "39.60"));
  const auto summary = testing::read_file(dir.path() / "eval" / "summary.txt");
  EXPECT_TRUE(contains(summary, "COCOMO     nominal     1      0.00"));
  EXPECT_TRUE(contains(summary, "COCOMO     total       1      0.00"));
  EXPECT_TRUE(contains(summary, "100.00"));
  const auto projects = testing::read_file(dir.path() / "eval" / "projects.csv");
  EXPECT_TRUE(contains(projects, "\na,10,organic,"));
  EXPECT_FALSE(contains(projects, "big"));
}

TEST(Cli, EvaluateErrors) {
  EXPECT_EQ(run({"evaluate", "--dataset", "/nonexistent.csv"}).code, 1);
  EXPECT_EQ(run({"--range", "200:300", "evaluate", "--dataset", fixture()}).code, 1);
  EXPECT_EQ(run({"--range", "5", "evaluate", "--dataset", fixture()}).code, 1);
}

TEST(Cli, ReplicateIsReproducible) {
  testing::TempDir dir;
  const auto a = (dir.path() / "a").string();
  const auto b = (dir.path() / "b").string();
  auto r = run({"--seed", "3", "--out", a, "replicate", "--dataset", fixture(), "--samples", "300"});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"--seed", "3", "--out", b, "replicate", "--dataset", fixture(), "--samples", "300", "--sequential"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::vector<std::string> files{"fig06.csv", "fig07.csv", "fig08.csv", "fig09.csv", "fig10.csv", "fig11.csv",
                                       "fig12.csv", "fig13.csv", "fig14.csv", "table4.csv", "summary.txt"};
  for (const auto& f : files) {
    const auto text = testing::read_file(dir.path() / "a" / f);
    ASSERT_FALSE(text.empty()) << f;
    EXPECT_EQ(text, testing::read_file(dir.path() / "b" / f)) << f;
    EXPECT_EQ(text.rfind("# fuzzyest 1.0.0 | seed=3 | config=dataset=", 0), 0u) << f;
  }
  const auto t4 = testing::read_file(dir.path() / "a" / "table4.csv");
  EXPECT_TRUE(contains(t4, "mf_count,tmf_nominal_pred25_pct,tmf_total_pred25_pct,gmf_nominal_pred25_pct,"
                           "gmf_total_pred25_pct\n3,"));

  const auto c = (dir.path() / "c").string();
  ASSERT_EQ(run({"--seed", "4", "--out", c, "replicate", "--dataset", fixture(), "--samples", "300"}).code, 0);
  EXPECT_NE(testing::read_file(dir.path() / "c" / "fig12.csv"), testing::read_file(dir.path() / "a" / "fig12.csv"));
}

}  // namespace
}  // namespace fuzzyest
