#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace osnma {

// MSB-first bit access; bit 0 is the top bit of byte 0.
uint64_t read_bits(std::span<const uint8_t> buf, size_t offset, size_t count);
void write_bits(std::span<uint8_t> buf, size_t offset, size_t count, uint64_t value);
bool read_bit(std::span<const uint8_t> buf, size_t offset);
void write_bit(std::span<uint8_t> buf, size_t offset, bool value);
void copy_bits(std::span<const uint8_t> src, size_t src_offset, std::span<uint8_t> dst,
               size_t dst_offset, size_t count);

std::string to_hex(std::span<const uint8_t> bytes);
// Throws ParseError on odd length or non-hex characters.
std::vector<uint8_t> from_hex(std::string_view hex);

// Bit string where each bit is either known or unknown.
class PartialBits {
 public:
  PartialBits() = default;
  explicit PartialBits(size_t bit_count);

  size_t size() const { return size_; }
  bool known(size_t i) const { return read_bit(known_, i); }
  bool value(size_t i) const { return read_bit(bits_, i); }
  void set(size_t i, bool v);
  size_t known_count() const;
  bool complete() const { return known_count() == size_; }
  bool any() const { return known_count() > 0; }

  const std::vector<uint8_t>& bytes() const { return bits_; }
  const std::vector<uint8_t>& mask() const { return known_; }
  std::string bitmap() const;  // '1'/'0' for known bits, '?' otherwise

  bool operator==(const PartialBits&) const = default;

 private:
  size_t size_ = 0;
  std::vector<uint8_t> bits_;
  std::vector<uint8_t> known_;
};

}  // namespace osnma
