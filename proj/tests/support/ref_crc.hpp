#pragma once

#include <cstdint>
#include <vector>

namespace ref {

// Bit-serial CRC-24Q (0x864CFB, zero init) over a bit vector, one bit per element.
uint32_t crc24q_bits(const std::vector<bool>& bits);

// The 196 bits protected on an I/NAV page: even bits 0..113, then odd-half bits 0..81.
std::vector<bool> protected_bits(const std::vector<uint8_t>& page30);

}  // namespace ref
