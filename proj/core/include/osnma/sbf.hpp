#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "osnma/records.hpp"

namespace osnma {

inline constexpr uint16_t kSbfGalRawInav = 4023;

struct SbfStats {
  size_t blocks = 0;          // CRC-valid blocks of any type
  size_t inav_blocks = 0;     // GALRawINAV blocks
  size_t crc_skipped = 0;     // blocks dropped on the SBF CRC
  size_t not_e1b = 0;         // GALRawINAV from other signals
  size_t nav_crc_failed = 0;  // receiver flagged the page CRC as failed
  size_t unusable_time = 0;   // do-not-use TOW/WNc
};

// Scans for "$@" sync, validates CRC-16-CCITT over ID..end, and converts
// E1-B GALRawINAV blocks into canonical records sorted by (gst, svid).
// Throws NoInavBlocks when no E1-B GALRawINAV block was found.
std::vector<PageRecord> ingest_sbf(std::span<const uint8_t> bytes, SbfStats* stats = nullptr);
std::vector<PageRecord> ingest_sbf_file(const std::string& path, SbfStats* stats = nullptr);

// One GALRawINAV block for a record (E1-B, CRC passed).
std::vector<uint8_t> encode_gal_raw_inav(const PageRecord& rec, uint8_t rx_channel = 0);

}  // namespace osnma
