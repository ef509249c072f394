#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "osnma/gst.hpp"

namespace osnma {

inline constexpr size_t kPageBits = 240;
inline constexpr size_t kPageBytes = 30;
inline constexpr size_t kPartBytes = 15;
inline constexpr size_t kWordBits = 128;
inline constexpr size_t kOsnmaFieldBits = 40;
inline constexpr int kPagesPerSubframe = 15;

using RawPage = std::array<uint8_t, kPageBytes>;
using WordPayload = std::array<uint8_t, kWordBits / 8>;
using OsnmaField = std::array<uint8_t, kOsnmaFieldBits / 8>;

// Absolute bit positions inside the 240-bit page (even part first).
namespace layout {
inline constexpr size_t kEvenFlag = 0;
inline constexpr size_t kEvenPageType = 1;
inline constexpr size_t kData1 = 2;
inline constexpr size_t kData1Bits = 112;
inline constexpr size_t kOddFlag = 120;
inline constexpr size_t kOddPageType = 121;
inline constexpr size_t kData2 = 122;
inline constexpr size_t kData2Bits = 16;
inline constexpr size_t kOsnma = 138;
inline constexpr size_t kSar = 178;
inline constexpr size_t kSpare = 200;
inline constexpr size_t kCrc = 202;
inline constexpr size_t kSsp = 226;
inline constexpr size_t kEvenProtectedBits = 114;
inline constexpr size_t kOddProtectedBits = 82;
}  // namespace layout

struct InavPage {
  uint8_t svid = 0;
  GstTime gst;
  std::array<uint8_t, kPartBytes> even_part{};
  std::array<uint8_t, kPartBytes> odd_part{};

  RawPage raw() const;
  bool operator==(const InavPage&) const = default;
};

struct NavWord {
  int word_type = 0;
  std::optional<uint16_t> iod_nav;
  WordPayload payload{};
  GstTime gst;
  uint8_t svid = 0;
};

// CRC-24Q over the 196 protected bits (even bits 0..113, odd bits 0..81).
uint32_t page_crc(const RawPage& raw);

// Throws BadFlags, BadPageType or BadCrc (checked in that order).
InavPage parse_page(const RawPage& raw, uint8_t svid, GstTime gst);
NavWord extract_word(const InavPage& page);
OsnmaField extract_osnma_field(const InavPage& page);

inline uint8_t hkroot_byte(const OsnmaField& f) { return f[0]; }
inline uint32_t mack_chunk(const OsnmaField& f) {
  return uint32_t(f[1]) << 24 | uint32_t(f[2]) << 16 | uint32_t(f[3]) << 8 | f[4];
}
bool is_zero(const OsnmaField& f);

// Builds a nominal, CRC-valid page. Tail, SAR, spare and SSP bits are zero.
RawPage emit_page(const WordPayload& word, const OsnmaField& osnma);
// Recomputes the CRC of an already laid out page.
void reseal_page(RawPage& raw);

int word_type_of(const WordPayload& payload);
bool word_has_iod(int word_type);

}  // namespace osnma
