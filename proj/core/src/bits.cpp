#include "osnma/bits.hpp"

#include <bit>

#include "osnma/error.hpp"

namespace osnma {

bool read_bit(std::span<const uint8_t> buf, size_t offset) {
  return (buf[offset / 8] >> (7 - offset % 8)) & 1u;
}

void write_bit(std::span<uint8_t> buf, size_t offset, bool value) {
  const uint8_t m = uint8_t(0x80u >> (offset % 8));
  if (value)
    buf[offset / 8] |= m;
  else
    buf[offset / 8] &= uint8_t(~m);
}

uint64_t read_bits(std::span<const uint8_t> buf, size_t offset, size_t count) {
  uint64_t v = 0;
  for (size_t i = 0; i < count; ++i) v = (v << 1) | uint64_t(read_bit(buf, offset + i));
  return v;
}

void write_bits(std::span<uint8_t> buf, size_t offset, size_t count, uint64_t value) {
  for (size_t i = 0; i < count; ++i) write_bit(buf, offset + i, (value >> (count - 1 - i)) & 1u);
}

void copy_bits(std::span<const uint8_t> src, size_t src_offset, std::span<uint8_t> dst,
               size_t dst_offset, size_t count) {
  for (size_t i = 0; i < count; ++i) write_bit(dst, dst_offset + i, read_bit(src, src_offset + i));
}

std::string to_hex(std::span<const uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 15]);
  }
  return out;
}

static int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::vector<uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2) throw Error(ErrorCode::ParseError, "odd hex length");
  std::vector<uint8_t> out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(hex[2 * i]), lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::ParseError, "bad hex digit");
    out[i] = uint8_t(hi << 4 | lo);
  }
  return out;
}

PartialBits::PartialBits(size_t bit_count)
    : size_(bit_count), bits_((bit_count + 7) / 8), known_((bit_count + 7) / 8) {}

void PartialBits::set(size_t i, bool v) {
  write_bit(bits_, i, v);
  write_bit(known_, i, true);
}

size_t PartialBits::known_count() const {
  size_t n = 0;
  for (uint8_t b : known_) n += size_t(std::popcount(b));
  return n;
}

std::string PartialBits::bitmap() const {
  std::string s(size_, '?');
  for (size_t i = 0; i < size_; ++i)
    if (known(i)) s[i] = value(i) ? '1' : '0';
  return s;
}

}  // namespace osnma
