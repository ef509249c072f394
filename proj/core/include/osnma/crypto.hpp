#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace osnma {

using Digest256 = std::array<uint8_t, 32>;

Digest256 sha256(std::span<const uint8_t> data);
Digest256 hmac_sha256(std::span<const uint8_t> key, std::span<const uint8_t> data);

}  // namespace osnma
