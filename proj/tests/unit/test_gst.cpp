#include <gtest/gtest.h>

#include "osnma/error.hpp"
#include "osnma/gst.hpp"

using osnma::GstTime;

TEST(Gst, SubframeBoundaryAndParity) {
  GstTime t{1267, 35400};
  EXPECT_TRUE(t.is_subframe_start());
  EXPECT_EQ(t.parity(), 0);
  EXPECT_EQ((t + 30).parity(), 1);
  EXPECT_FALSE((t + 2).is_subframe_start());
  EXPECT_EQ((t + 28).page_slot(), 14);
  EXPECT_EQ((t + 29).subframe_start(), t);
}

TEST(Gst, AdditionRollsIntoNextWeek) {
  GstTime t{100, 604790};
  GstTime u = t + 20;
  EXPECT_EQ(u.wn, 101u);
  EXPECT_EQ(u.tow, 10u);
  EXPECT_EQ(u - t, 20);
  EXPECT_EQ(u - 20, t);
  EXPECT_LT(t, u);
}

TEST(Gst, OrderingMatchesSeconds) {
  uint64_t s = 7;
  for (int i = 0; i < 10000; ++i) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    const int64_t a = int64_t(s >> 20) % (3000 * GstTime::kSecondsPerWeek);
    const int64_t b = a + int64_t(s & 0xFFFFF) - 0x80000;
    if (b < 0) continue;
    const auto ta = GstTime::from_seconds(a), tb = GstTime::from_seconds(b);
    EXPECT_EQ(ta < tb, a < b);
    EXPECT_EQ(ta.seconds(), a);
    EXPECT_EQ(ta.subframe_index(), a / 30);
  }
}

TEST(Gst, MacEncoding) {
  GstTime t{5000, 0x12345};
  EXPECT_EQ(t.mac_encoding(), (uint32_t(5000 % 4096) << 20) | 0x12345u);
}

TEST(Gst, NegativeRejected) { EXPECT_THROW(GstTime::from_seconds(-1), osnma::Error); }
