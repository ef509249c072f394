#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

// Straight FIPS 180-4 SHA-256 and RFC 2104 HMAC, used as a second opinion.
namespace ref {

std::array<uint8_t, 32> sha256(std::span<const uint8_t> msg);
std::array<uint8_t, 32> hmac_sha256(std::span<const uint8_t> key, std::span<const uint8_t> msg);

}  // namespace ref
