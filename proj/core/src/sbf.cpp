#include "osnma/sbf.hpp"

#include <fstream>
#include <iterator>

#include "osnma/bits.hpp"
#include "osnma/crc.hpp"
#include "osnma/error.hpp"

namespace osnma {
namespace {

constexpr size_t kHeader = 8;
constexpr size_t kInavBody = 6 + 6 + 32;
constexpr uint32_t kTowDnu = 4294967295u;
constexpr uint16_t kWncDnu = 65535;
constexpr int kSignalE1B = 17;
constexpr int kEvenBits = 114;
constexpr int kOddBits = 120;

uint16_t u2(std::span<const uint8_t> b, size_t o) { return uint16_t(b[o] | b[o + 1] << 8); }
uint32_t u4(std::span<const uint8_t> b, size_t o) {
  return uint32_t(b[o]) | uint32_t(b[o + 1]) << 8 | uint32_t(b[o + 2]) << 16 | uint32_t(b[o + 3]) << 24;
}
void put_u2(std::vector<uint8_t>& v, uint16_t x) {
  v.push_back(uint8_t(x));
  v.push_back(uint8_t(x >> 8));
}
void put_u4(std::vector<uint8_t>& v, uint32_t x) {
  for (int i = 0; i < 4; ++i) v.push_back(uint8_t(x >> (8 * i)));
}

}  // namespace

std::vector<PageRecord> ingest_sbf(std::span<const uint8_t> bytes, SbfStats* stats) {
  SbfStats st;
  std::vector<PageRecord> out;
  size_t i = 0;
  while (i + kHeader <= bytes.size()) {
    if (bytes[i] != '$' || bytes[i + 1] != '@') {
      ++i;
      continue;
    }
    const uint16_t crc = u2(bytes, i + 2);
    const uint16_t id = u2(bytes, i + 4);
    const uint16_t len = u2(bytes, i + 6);
    if (len < kHeader || len % 4 || i + len > bytes.size()) {
      ++i;
      continue;
    }
    if (crc16_ccitt(bytes.subspan(i + 4, len - 4)) != crc) {
      ++st.crc_skipped;
      i += len;
      continue;
    }
    ++st.blocks;
    const auto blk = bytes.subspan(i, len);
    i += len;
    if ((id & 0x1FFF) != kSbfGalRawInav || len < kHeader + kInavBody) continue;
    ++st.inav_blocks;
    const uint32_t tow_ms = u4(blk, 8);
    const uint16_t wnc = u2(blk, 12);
    const uint8_t svid = blk[14];
    const uint8_t crc_passed = blk[15];
    const uint8_t source = blk[17];
    if ((source & 31) != kSignalE1B || svid < 71 || svid > 106) {
      ++st.not_e1b;
      continue;
    }
    if (!crc_passed) {
      ++st.nav_crc_failed;
      continue;
    }
    if (tow_ms == kTowDnu || wnc == kWncDnu || wnc < 1024 || (wnc == 1024 && tow_ms < 2000)) {
      ++st.unusable_time;
      continue;
    }
    std::array<uint8_t, 32> nav{};
    for (size_t w = 0; w < 8; ++w) {
      const uint32_t v = u4(blk, 20 + 4 * w);
      for (int b = 0; b < 4; ++b) nav[4 * w + size_t(b)] = uint8_t(v >> (24 - 8 * b));
    }
    PageRecord r;
    r.svid = uint8_t(svid - 70);
    // TOW stamps the end of the 2 s page.
    r.gst = GstTime::from_seconds(int64_t(wnc - 1024) * GstTime::kSecondsPerWeek + tow_ms / 1000 - 2);
    copy_bits(nav, 0, r.page, 0, kEvenBits);
    copy_bits(nav, kEvenBits, r.page, 120, kOddBits);
    out.push_back(r);
  }
  if (stats) *stats = st;
  if (st.inav_blocks == st.not_e1b) throw Error(ErrorCode::NoInavBlocks, "no E1-B GALRawINAV block");
  sort_records(out);
  return out;
}

std::vector<PageRecord> ingest_sbf_file(const std::string& path, SbfStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ingest_sbf(bytes, stats);
}

std::vector<uint8_t> encode_gal_raw_inav(const PageRecord& rec, uint8_t rx_channel) {
  std::vector<uint8_t> b;
  b.push_back('$');
  b.push_back('@');
  put_u2(b, 0);
  put_u2(b, kSbfGalRawInav);
  put_u2(b, uint16_t(kHeader + kInavBody));
  const int64_t end = rec.gst.seconds() + 2;
  put_u4(b, uint32_t((end % GstTime::kSecondsPerWeek) * 1000));
  put_u2(b, uint16_t(end / GstTime::kSecondsPerWeek + 1024));
  b.push_back(uint8_t(rec.svid + 70));
  b.push_back(1);           // CRCPassed
  b.push_back(0);           // ViterbiCnt
  b.push_back(kSignalE1B);  // Source
  b.push_back(0);           // FreqNr
  b.push_back(rx_channel);
  std::array<uint8_t, 32> nav{};
  copy_bits(rec.page, 0, nav, 0, kEvenBits);
  copy_bits(rec.page, 120, nav, kEvenBits, kOddBits);
  for (size_t w = 0; w < 8; ++w)
    put_u4(b, uint32_t(nav[4 * w]) << 24 | uint32_t(nav[4 * w + 1]) << 16 | uint32_t(nav[4 * w + 2]) << 8 |
                  nav[4 * w + 3]);
  const uint16_t crc = crc16_ccitt(std::span<const uint8_t>(b).subspan(4));
  b[2] = uint8_t(crc);
  b[3] = uint8_t(crc >> 8);
  return b;
}

}  // namespace osnma
