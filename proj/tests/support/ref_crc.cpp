#include "ref_crc.hpp"

namespace ref {

uint32_t crc24q_bits(const std::vector<bool>& bits) {
  uint32_t reg = 0;
  for (bool b : bits) {
    const bool top = (reg >> 23) & 1;
    reg = (reg << 1) & 0xFFFFFF;
    if (top != b) reg ^= 0x864CFB;
  }
  return reg;
}

std::vector<bool> protected_bits(const std::vector<uint8_t>& page30) {
  auto bit = [&](size_t i) { return bool(page30[i / 8] >> (7 - i % 8) & 1); };
  std::vector<bool> out;
  for (size_t i = 0; i < 114; ++i) out.push_back(bit(i));
  for (size_t i = 120; i < 202; ++i) out.push_back(bit(i));
  return out;
}

}  // namespace ref
