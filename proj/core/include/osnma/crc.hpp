#pragma once

#include <cstdint>
#include <span>

namespace osnma {

// CRC-24Q, polynomial 0x1864CFB, zero init, no reflection, no final xor.
uint32_t crc24q(std::span<const uint8_t> bytes);

// CRC-16-CCITT (XModem form): polynomial 0x1021, zero init.
uint16_t crc16_ccitt(std::span<const uint8_t> bytes);

}  // namespace osnma
