#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "osnma/error.hpp"
#include "osnma/report.hpp"

using namespace osnma;

namespace {

SweepResult run(const char* preset, const char* policy, int64_t count, int64_t step = 1) {
  const auto& out = testing_support::scenario(preset);
  SweepOptions o;
  o.count = count;
  o.step = step;
  o.fix_rule = FixRule::ephemeris_only();
  return sweep(out.records, out.hotstart, TimeSyncPolicy::named(policy), o);
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(Metrics, DirectComputation) {
  const std::vector<int64_t> a = {44, 46, 60};
  auto m = metrics(a);
  EXPECT_EQ(m.lowest, 44);
  EXPECT_EQ(m.average, 50);
  EXPECT_EQ(m.p95, 60);
  const std::vector<int64_t> one = {90};
  m = metrics(one);
  EXPECT_EQ(m.lowest, 90);
  EXPECT_EQ(m.average, 90);
  EXPECT_EQ(m.p95, 90);
  EXPECT_THROW(metrics(std::vector<int64_t>{}), Error);
}

TEST(Metrics, NearestRankP95) {
  std::vector<int64_t> v;
  for (int i = 1; i <= 100; ++i) v.push_back(i);
  EXPECT_EQ(metrics(v).p95, 95);
  v.push_back(101);
  EXPECT_EQ(metrics(v).p95, 96);  // ceil(0.95 * 101) = 96
  std::vector<int64_t> twenty(20, 1);
  twenty.back() = 99;
  EXPECT_EQ(metrics(twenty).p95, 1);
}

TEST(Sweep, BaselineOneSubframe) {
  const auto r = run("ideal_4conn", "baseline", 30);
  ASSERT_EQ(r.points.size(), 30u);
  EXPECT_EQ(r.points[0].ttfaf_s, 90);
  for (int i = 1; i < 30; ++i) EXPECT_EQ(r.points[size_t(i)].ttfaf_s, 120 - i);
  EXPECT_EQ(r.metrics->lowest, 90);
  EXPECT_DOUBLE_EQ(r.metrics->average, 104.5);
  ASSERT_EQ(r.min_per_subframe.size(), 1u);
  EXPECT_EQ(r.min_per_subframe[0].min_ttfaf_s, 90);
}

TEST(Sweep, StepAndParallelAgree) {
  const auto& out = testing_support::scenario("ideal_4conn");
  SweepOptions o;
  o.count = 20;
  o.step = 3;
  const auto pol = TimeSyncPolicy::named("cop_iod");
  const auto a = sweep(out.records, out.hotstart, pol, o);
  o.threads = 4;
  const auto b = sweep(out.records, out.hotstart, pol, o);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.points[5].offset_s, 15);
  EXPECT_EQ(report_json(a), report_json(b));
}

TEST(Sweep, StreamTooShort) {
  const auto& out = testing_support::scenario("ideal_4conn");
  std::vector<PageRecord> head;
  for (const auto& r : out.records)
    if (r.gst - out.records.front().gst < 80) head.push_back(r);
  try {
    sweep(head, out.hotstart, TimeSyncPolicy::named("baseline"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StreamTooShort);
  }
}

TEST(Sweep, NoFixRunsAreNullAndExcluded) {
  const auto& out = testing_support::scenario("ideal_4conn");
  SweepOptions o;
  o.count = 300 - 60;  // late offsets run out of stream
  const auto r = sweep(out.records, out.hotstart, TimeSyncPolicy::named("baseline"), o);
  EXPECT_GT(r.no_fix, 0u);
  size_t nulls = 0;
  for (const auto& p : r.points) nulls += !p.ttfaf_s;
  EXPECT_EQ(nulls, r.no_fix);
  EXPECT_EQ(r.metrics->count, r.points.size() - r.no_fix);
}

TEST(Sweep, JsonRoundTrip) {
  const auto r = run("ideal_4conn", "iod", 40);
  const auto back = SweepResult::from_json(r.to_json());
  EXPECT_EQ(back.points, r.points);
  EXPECT_EQ(back.to_json(), r.to_json());
  EXPECT_THROW(SweepResult::from_json("[]"), Error);
}

TEST(Report, CsvRowsAndHeaderOnly) {
  const auto r = run("ideal_4conn", "cop_iod", 45);
  EXPECT_EQ(lines(ttfaf_csv(r)).size(), 46u);
  SweepResult empty;
  EXPECT_EQ(ttfaf_csv(empty), "offset_s,ttfaf_s\n");
  EXPECT_EQ(cdf_csv(empty), "ttfaf_s,cdf\n");
}

TEST(Report, CdfMonotoneToOne) {
  const auto r = run("ideal_4conn", "cop_iod", 60);
  const auto cdf = empirical_cdf(r);
  ASSERT_FALSE(cdf.empty());
  for (size_t i = 1; i < cdf.size(); ++i) {
    EXPECT_LT(cdf[i - 1].first, cdf[i].first);
    EXPECT_LE(cdf[i - 1].second, cdf[i].second);
  }
  EXPECT_EQ(cdf.back().second, 1.0);
  EXPECT_EQ(double(cdf.back().first), *std::max_element(r.points.begin(), r.points.end(), [](auto& a, auto& b) {
                                         return a.ttfaf_s < b.ttfaf_s;
                                       })->ttfaf_s);
}

TEST(Report, JsonAndCsvCarrySameNumbers) {
  const auto r = run("open_sky_4c4d", "cop_iod", 50);
  const auto j = nlohmann::json::parse(report_json(r));
  const auto rows = lines(ttfaf_csv(r));
  ASSERT_EQ(j["ttfaf"].size() + 1, rows.size());
  for (size_t i = 0; i < j["ttfaf"].size(); ++i) {
    const auto& p = j["ttfaf"][i];
    std::string expect = std::to_string(p["offset_s"].get<int64_t>()) + ",";
    if (!p["ttfaf_s"].is_null()) expect += std::to_string(p["ttfaf_s"].get<int64_t>());
    EXPECT_EQ(rows[i + 1], expect);
  }
  const auto cdf = lines(cdf_csv(r));
  for (size_t i = 0; i < j["cdf"].size(); ++i) {
    std::istringstream row(cdf[i + 1]);
    std::string v, f;
    std::getline(row, v, ',');
    std::getline(row, f);
    EXPECT_EQ(std::stoll(v), j["cdf"][i]["ttfaf_s"].get<int64_t>());
    EXPECT_EQ(std::stod(f), j["cdf"][i]["cdf"].get<double>());
  }
  const auto m = lines(metrics_csv(r));
  EXPECT_NE(m[1].find(format_number(j["metrics"]["average_s"].get<double>())), std::string::npos);
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333");
  EXPECT_EQ(format_number(59.5), "59.5");
}

TEST(Report, WritesFilesDeterministically) {
  const auto r = run("ideal_4conn", "baseline", 31);
  const auto dir = std::filesystem::temp_directory_path() / "osnma_report_test";
  std::filesystem::remove_all(dir);
  auto read = [](const std::filesystem::path& p) {
    std::ifstream f(p);
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  };
  const auto files = write_report(r, ReportFormat::Csv, dir / "a");
  EXPECT_EQ(files.size(), 4u);
  write_report(run("ideal_4conn", "baseline", 31), ReportFormat::Csv, dir / "b");
  for (const auto& f : files) EXPECT_EQ(read(f), read(dir / "b" / f.filename()));
  const auto js = write_report(r, ReportFormat::Json, dir / "a");
  EXPECT_EQ(js.at(0).filename(), "report.json");
  EXPECT_THROW(write_report(r, ReportFormat::Csv, "/proc/osnma/nope"), Error);
  std::filesystem::remove_all(dir);
}
