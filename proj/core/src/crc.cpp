#include "osnma/crc.hpp"

#include <array>

namespace osnma {
namespace {

constexpr std::array<uint32_t, 256> make_crc24q_table() {
  std::array<uint32_t, 256> t{};
  for (uint32_t i = 0; i < 256; ++i) {
    uint32_t c = i << 16;
    for (int b = 0; b < 8; ++b) {
      c <<= 1;
      if (c & 0x1000000u) c ^= 0x1864CFBu;
    }
    t[i] = c & 0xFFFFFFu;
  }
  return t;
}

constexpr std::array<uint16_t, 256> make_crc16_table() {
  std::array<uint16_t, 256> t{};
  for (uint32_t i = 0; i < 256; ++i) {
    uint32_t c = i << 8;
    for (int b = 0; b < 8; ++b) c = (c & 0x8000u) ? (c << 1) ^ 0x1021u : c << 1;
    t[i] = uint16_t(c);
  }
  return t;
}

constexpr auto kCrc24 = make_crc24q_table();
constexpr auto kCrc16 = make_crc16_table();

}  // namespace

uint32_t crc24q(std::span<const uint8_t> bytes) {
  uint32_t crc = 0;
  for (uint8_t b : bytes) crc = ((crc << 8) & 0xFFFFFFu) ^ kCrc24[((crc >> 16) ^ b) & 0xFF];
  return crc;
}

uint16_t crc16_ccitt(std::span<const uint8_t> bytes) {
  uint16_t crc = 0;
  for (uint8_t b : bytes) crc = uint16_t((crc << 8) ^ kCrc16[((crc >> 8) ^ b) & 0xFF]);
  return crc;
}

}  // namespace osnma
