#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace osnma;

namespace {

std::vector<SweepPoint> points(const ScenarioOutput& out, TimeSyncPolicy pol, int64_t count, int64_t step) {
  SweepOptions o;
  o.count = count;
  o.step = step;
  o.fix_rule = FixRule::ephemeris_only();
  return sweep(out.records, out.hotstart, pol, o).points;
}

bool no_later(const std::optional<int64_t>& a, const std::optional<int64_t>& b) {
  if (!b) return true;
  return a && *a <= *b;
}

}  // namespace

// Turning on page-level processing never delays any start offset.
TEST(Properties, PageLevelDominatesPointwise) {
  for (const char* preset : {"soft_urban", "hard_urban"}) {
    for (uint64_t seed = 1; seed <= 3; ++seed) {
      const auto& out = testing_support::scenario(preset, seed);
      for (int ts : {17, 25}) {
        auto off = TimeSyncPolicy::named("iod", ts);
        auto on = TimeSyncPolicy::named("page", ts);
        const auto a = points(out, off, 60, 7);
        const auto b = points(out, on, 60, 7);
        for (size_t i = 0; i < a.size(); ++i)
          EXPECT_TRUE(no_later(b[i].ttfaf_s, a[i].ttfaf_s))
              << preset << " seed " << seed << " ts " << ts << " offset " << a[i].offset_s;
      }
    }
  }
}

// Adding the COP link on top of IOD + page at the same T_S never delays either.
TEST(Properties, CopLinkDominatesPointwise) {
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    const auto& out = testing_support::scenario("soft_urban", seed);
    const auto a = points(out, TimeSyncPolicy::named("page", 17), 60, 7);
    const auto b = points(out, TimeSyncPolicy::named("cop_iod", 17), 60, 7);
    for (size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(no_later(b[i].ttfaf_s, a[i].ttfaf_s)) << a[i].offset_s;
  }
}

// A lower T_S requirement only ever relaxes gating.
TEST(Properties, SmallerTsNeverSlower) {
  const auto& out = testing_support::scenario("open_sky", 2);
  std::vector<SweepPoint> prev;
  for (int ts = 30; ts >= 18; ts -= 3) {
    const auto cur = points(out, TimeSyncPolicy::named("page", std::min(ts, 25)), 40, 11);
    if (!prev.empty())
      for (size_t i = 0; i < cur.size(); ++i) EXPECT_TRUE(no_later(cur[i].ttfaf_s, prev[i].ttfaf_s));
    prev = cur;
  }
}

// Sweeps are pure functions of their inputs.
TEST(Properties, SweepDeterministic) {
  const auto& out = testing_support::scenario("soft_urban", 7);
  SweepOptions o;
  o.count = 30;
  o.step = 5;
  const auto a = sweep(out.records, out.hotstart, TimeSyncPolicy::named("cop_iod"), o);
  const auto b = sweep(out.records, out.hotstart, TimeSyncPolicy::named("cop_iod"), o);
  EXPECT_EQ(a.to_json(), b.to_json());
}

// Dropping pages from a stream can only delay the fix.
TEST(Properties, LossNeverHelps) {
  const auto& out = testing_support::scenario("open_sky_4c4d");
  uint64_t st = 17;
  for (int trial = 0; trial < 8; ++trial) {
    const auto r = testing_support::random_bytes(st, out.records.size());
    ScenarioOutput lossy = out;
    lossy.records = testing_support::without(out.records, [&, i = size_t(0)](const PageRecord&) mutable {
      return r[i++] < 20;  // ~8 %
    });
    for (const char* pol : {"baseline", "page", "cop_iod"}) {
      const auto full = testing_support::replay(out, TimeSyncPolicy::named(pol), out.records.front().gst + 3 * trial);
      const auto cut = testing_support::replay(lossy, TimeSyncPolicy::named(pol), out.records.front().gst + 3 * trial);
      EXPECT_TRUE(no_later(full.ttfaf_seconds(), cut.ttfaf_seconds())) << pol << " trial " << trial;
    }
  }
}
