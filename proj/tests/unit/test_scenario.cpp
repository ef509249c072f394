#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "osnma/error.hpp"

using namespace osnma;

namespace {

ScenarioConfig small(int connected, int disconnected, int64_t period = 0) {
  ScenarioConfig c;
  c.duration_s = 6 * 30;
  c.iod_change_period_sf = period;
  const uint8_t ids[] = {2, 4, 10, 27, 5, 12, 19, 33};
  for (int i = 0; i < connected + disconnected; ++i) {
    SatelliteConfig s;
    s.svid = ids[i];
    s.connected = i < connected;
    c.satellites.push_back(s);
  }
  return c;
}

}  // namespace

TEST(Scenario, DeterministicUnderSeed) {
  const auto a = Scenario(preset("soft_urban", 4)).generate();
  const auto b = Scenario(preset("soft_urban", 4)).generate();
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(a.truth.to_json(), b.truth.to_json());
  const auto c = Scenario(preset("soft_urban", 5)).generate();
  EXPECT_NE(a.records, c.records);
}

TEST(Scenario, TotalLossGivesEmptyStream) {
  auto c = small(4, 0);
  for (auto& s : c.satellites) s.loss = LossModel::bernoulli(1.0);
  EXPECT_TRUE(Scenario(c).generate().records.empty());
}

TEST(Scenario, LossRateNearStationary) {
  const auto ge = LossModel::gilbert_elliott(0.03, 0.25, 0.01, 0.8);
  EXPECT_NEAR(ge.stationary_loss(), 0.03 / 0.28 * 0.8 + 0.25 / 0.28 * 0.01, 1e-12);
  auto c = small(4, 4);
  c.duration_s = 400 * 30;
  for (auto& s : c.satellites) s.loss = ge;
  const auto out = Scenario(c).generate();
  const double lost = double(out.truth.lost_pages.size()) / double(out.truth.lost_pages.size() + out.records.size());
  EXPECT_NEAR(lost, ge.stationary_loss(), 0.01);
}

TEST(Scenario, DisconnectedSatellitesCarryNoOsnma) {
  const auto& out = testing_support::scenario("open_sky_4c4d");
  const std::set<uint8_t> off = {5, 12, 19, 33};
  for (const auto& r : out.records) {
    const auto f = extract_osnma_field(parse_page(r.page, r.svid, r.gst));
    ASSERT_EQ(is_zero(f), off.count(r.svid) == 1) << int(r.svid);
  }
}

TEST(Scenario, CopMatchesScheduleCount) {
  auto cfg = small(4, 0, 20);
  cfg.satellites[1].iod_phase = 7;
  const Scenario sim(cfg);
  for (uint8_t sv : {2, 4}) {
    for (int64_t sf = sim.start_sf() - 60; sf < sim.start_sf() + 60; ++sf) {
      int same = 0;  // sub-frames back to and including sf with the same data
      while (same < 15 && sim.word(sv, sf - same, 1) == sim.word(sv, sf, 1)) ++same;
      ASSERT_EQ(sim.cop(sv, sf, 0), same) << sf;
      ASSERT_EQ(sim.cop(sv, sf, 4), 15);
    }
  }
  const Scenario flat(small(4, 0, 0));
  EXPECT_EQ(flat.cop(2, flat.start_sf() + 40, 0), 15);
}

TEST(Scenario, TagCountsPerSubframe) {
  for (const auto& tc : count_tags(testing_support::scenario("ideal_4conn_ops").truth)) {
    EXPECT_EQ(tc.for_connected, 4);
    EXPECT_EQ(tc.for_disconnected, 0);
  }
  for (const auto& tc : count_tags(testing_support::scenario("open_sky_4c4d").truth)) {
    EXPECT_EQ(tc.for_connected, 4);
    EXPECT_EQ(tc.for_disconnected, 12);
  }
}

TEST(Scenario, JoiningSatelliteStillCoveredAtJoin) {
  auto cfg = small(4, 4);
  cfg.satellites[4].connected = false;
  cfg.satellites[4].connect_at_sf = 3;
  const Scenario sim(cfg);
  const auto out = sim.generate();
  const int64_t k = sim.start_sf() + 3;
  auto cross_to_joiner = [&](int64_t sf) {
    int n = 0;
    for (const auto& t : out.truth.tags)
      if (t.sf == sf && t.prn_d == 5 && t.emitter != 5 && t.adkd == 0) ++n;
    return n;
  };
  EXPECT_GT(cross_to_joiner(k - 1), 0);
  EXPECT_GT(cross_to_joiner(k), 0);
  EXPECT_EQ(cross_to_joiner(k + 1), 0);
  for (const auto& tc : count_tags(out.truth))
    if (tc.sf == k) EXPECT_EQ(tc.for_connected, 5 + cross_to_joiner(k));
}

TEST(Scenario, AdversaryRules) {
  auto forge = preset("cop_forge");
  const Scenario sim(forge);
  const auto out = sim.generate();
  auto honest = preset("cop_honest");
  const auto clean = Scenario(honest).generate();
  EXPECT_NE(out.records, clean.records);
  EXPECT_FALSE(out.truth.adversary_note.empty());
  for (const auto& r : out.records) ASSERT_NO_THROW(parse_page(r.page, r.svid, r.gst));

  auto none = clean;
  Scenario(honest).apply_adversary(none, Adversary{});
  EXPECT_EQ(none.records, clean.records);

  auto flat = Scenario(small(4, 0, 0)).generate();
  EXPECT_THROW(Scenario(small(4, 0, 0)).apply_adversary(flat, Adversary{Adversary::Kind::CopForge, 2}), Error);
}

TEST(Scenario, ConfigValidation) {
  auto c = small(4, 0);
  c.satellites[1].svid = 2;
  EXPECT_THROW(Scenario{c}, Error);
  auto d = small(4, 0);
  d.satellites[0].loss = LossModel::bernoulli(1.5);
  EXPECT_THROW(Scenario{d}, Error);
  EXPECT_THROW(preset("nowhere"), Error);
  for (const auto& n : preset_names()) EXPECT_NO_THROW(preset(n).validate()) << n;
}
