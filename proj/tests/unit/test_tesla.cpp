#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "osnma/crypto.hpp"
#include "osnma/error.hpp"
#include "osnma/tesla.hpp"
#include "ref_sha256.hpp"

using namespace osnma;

namespace {

std::vector<uint8_t> bytes(const std::string& s) { return {s.begin(), s.end()}; }

struct Ctx {
  const ScenarioOutput& out = testing_support::scenario("ideal_4conn");
  const Scenario sim{preset("ideal_4conn")};
  const ChainConfig& cfg = out.hotstart.chain;
  int64_t sf0 = out.records.front().gst.subframe_index();

  TeslaKey key(int64_t sf) const { return {out.truth.keys.at(sf), GstTime::from_subframe_index(sf), 0}; }

  MackMessage mack(uint8_t svid, int64_t sf) const {
    std::array<std::optional<OsnmaField>, kPagesPerSubframe> f;
    for (const auto& r : out.records)
      if (r.svid == svid && r.gst.subframe_index() == sf)
        f[size_t(r.gst.page_slot())] = extract_osnma_field(parse_page(r.page, r.svid, r.gst));
    return assemble_mack(svid, GstTime::from_subframe_index(sf), f, cfg, out.hotstart.sequence);
  }

  NavDataBlock block(uint8_t svid, int64_t sf, BlockKind kind) const {
    NavDataBlock b;
    b.svid = svid;
    b.kind = kind;
    for (int wt : required_words(kind)) b.words[wt].payload = sim.word(svid, sf, wt);
    b.applicable_sfs[sf] = {};
    return b;
  }
};

}  // namespace

TEST(Crypto, AgreesWithReferenceImplementation) {
  const auto abc = bytes("abc");
  const auto d = sha256(abc);
  EXPECT_EQ(to_hex(d), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(ref::sha256(abc), d);
  const auto h = hmac_sha256(bytes("key"), bytes("The quick brown fox jumps over the lazy dog"));
  EXPECT_EQ(to_hex(h), "f7bc83f430538424b13298e6aa6fb143ef4d59a14946175997479dbc2d1a3cd8");
  uint64_t st = 9;
  for (int i = 0; i < 300; ++i) {
    const auto k = testing_support::random_bytes(st, size_t(i % 80));
    const auto m = testing_support::random_bytes(st, size_t(i * 7 % 200));
    ASSERT_EQ(hmac_sha256(k, m), ref::hmac_sha256(k, m));
    ASSERT_EQ(sha256(m), ref::sha256(m));
  }
}

TEST(Tesla, ChainStepMatchesOracle) {
  Ctx c;
  for (int64_t sf = c.sf0; sf < c.sf0 + 5; ++sf) {
    std::vector<uint8_t> msg = c.out.truth.keys.at(sf);
    const uint32_t g = GstTime::from_subframe_index(sf - 1).mac_encoding();
    for (int s = 24; s >= 0; s -= 8) msg.push_back(uint8_t(g >> s));
    msg.insert(msg.end(), c.cfg.alpha.begin(), c.cfg.alpha.end());
    const auto d = ref::sha256(msg);
    EXPECT_EQ(std::vector<uint8_t>(d.begin(), d.begin() + 16), c.out.truth.keys.at(sf - 1));
  }
}

TEST(Tesla, VerifyKey) {
  Ctx c;
  const auto root = c.out.hotstart.root;
  auto r = verify_key(root, root, c.cfg);
  EXPECT_TRUE(r.verified());
  EXPECT_EQ(r.hash_applications, 0);
  const auto k7 = c.key(root.gst_sf.subframe_index() + 7);
  r = verify_key(k7, root, c.cfg);
  EXPECT_TRUE(r.verified());
  EXPECT_EQ(r.hash_applications, 7);
  auto flipped = k7;
  flipped.bits[3] ^= 0x10;
  EXPECT_FALSE(verify_key(flipped, root, c.cfg).verified());
  EXPECT_FALSE(verify_key(root, k7, c.cfg).verified());
  EXPECT_THROW(verify_key(k7, root, c.cfg, 5), Error);
}

TEST(Tesla, KeyChainFloorAndDerive) {
  Ctx c;
  KeyChain chain(c.out.hotstart.root, c.cfg);
  const int64_t r = c.out.hotstart.root.gst_sf.subframe_index();
  EXPECT_TRUE(chain.verify(c.key(r + 5)).verified());
  EXPECT_EQ(chain.trusted().gst_sf.subframe_index(), r + 5);
  const auto again = chain.verify(c.key(r + 3));
  EXPECT_FALSE(again.verified());
  EXPECT_EQ(again.evidence.note, "below floor");
  for (int64_t k = r; k <= r + 5; ++k) {
    auto d = chain.derive(k);
    ASSERT_TRUE(d);
    EXPECT_EQ(d->bits, c.out.truth.keys.at(k));
  }
  EXPECT_FALSE(chain.derive(r + 6));
  EXPECT_FALSE(chain.derive(r - 1));
}

TEST(Tesla, TagMatchesIndependentMac) {
  ChainConfig cfg;
  TeslaKey zero{std::vector<uint8_t>(16, 0), GstTime{1, 30}, 0};
  TagRecord t;
  t.prn_d = 4;
  t.authenticating_svid = 4;
  t.sf_start = GstTime{1, 0};
  const std::vector<uint8_t> msg = tag_message(t, {});
  EXPECT_EQ(msg, (std::vector<uint8_t>{4, 4, 0x00, 0x10, 0x00, 0x00, 0, 0}));
  const auto mac = ref::hmac_sha256(zero.bits, msg);
  const uint64_t expect = uint64_t(mac[0]) << 32 | uint64_t(mac[1]) << 24 | uint64_t(mac[2]) << 16 |
                          uint64_t(mac[3]) << 8 | mac[4];
  EXPECT_EQ(compute_tag(zero, msg, cfg), expect);
  EXPECT_EQ(compute_tag(zero, msg, cfg), compute_tag(zero, msg, cfg));
}

TEST(Tesla, SimulatorTagsVerify) {
  Ctx c;
  int verified = 0;
  for (int64_t sf = c.sf0 + 1; sf < c.sf0 + 3; ++sf) {
    for (uint8_t sv : {2, 4, 10, 27}) {
      const auto m = c.mack(sv, sf);
      for (const auto& t : m.tags) {
        ASSERT_TRUE(t);
        if (t->dummy()) continue;
        const auto kind = block_kind_for_adkd(t->adkd);
        const auto blk = c.block(t->prn_d, sf - 1, kind);
        const auto key = c.key(sf + key_delay_subframes(t->adkd));
        ASSERT_TRUE(verify_tag(*t, blk, key, c.cfg).verified()) << t->id();
        ++verified;
        auto bad = blk;
        bad.words.begin()->second.payload[7] ^= 1;
        ASSERT_FALSE(verify_tag(*t, bad, key, c.cfg).verified());
        EXPECT_THROW(verify_tag(*t, blk, c.key(sf + key_delay_subframes(t->adkd) + 1), c.cfg), Error);
      }
      EXPECT_TRUE(verify_macseq(m, c.key(sf + 1), c.cfg, c.out.hotstart.sequence).verified());
    }
  }
  EXPECT_GT(verified, 30);
}

TEST(Tesla, MacseqFaults) {
  Ctx c;
  const int64_t sf = c.sf0 + 2;
  auto m = c.mack(2, sf);
  auto altered = m;
  altered.tags[1]->cop ^= 1;
  EXPECT_FALSE(verify_macseq(altered, c.key(sf + 1), c.cfg, c.out.hotstart.sequence).verified());
  auto missing = m;
  missing.macseq.reset();
  EXPECT_THROW(verify_macseq(missing, c.key(sf + 1), c.cfg, c.out.hotstart.sequence), Error);
}

TEST(Tesla, TimingPayloadNeedsBothWords) {
  Ctx c;
  auto blk = c.block(2, c.sf0, BlockKind::Timing);
  blk.words.erase(10);
  try {
    adkd_payload(blk, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DataIncomplete);
  }
}

TEST(Tesla, HotstartJsonRoundTrip) {
  Ctx c;
  const auto hs = parse_hotstart(hotstart_to_json(c.out.hotstart));
  EXPECT_EQ(hs.chain, c.cfg);
  EXPECT_EQ(hs.root, c.out.hotstart.root);
  EXPECT_EQ(hs.sequence, c.out.hotstart.sequence);
  EXPECT_THROW(parse_hotstart("{}"), Error);
}
