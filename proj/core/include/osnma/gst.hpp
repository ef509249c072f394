#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace osnma {

// Galileo System Time as week number + time of week (seconds).
struct GstTime {
  static constexpr int64_t kSecondsPerWeek = 604800;
  static constexpr int64_t kSubframeSeconds = 30;
  static constexpr int64_t kPageSeconds = 2;

  uint32_t wn = 0;
  uint32_t tow = 0;

  static GstTime from_seconds(int64_t total);
  static GstTime from_subframe_index(int64_t index) { return from_seconds(index * kSubframeSeconds); }

  int64_t seconds() const { return int64_t(wn) * kSecondsPerWeek + tow; }
  int64_t subframe_index() const { return seconds() / kSubframeSeconds; }

  bool is_subframe_start() const { return tow % kSubframeSeconds == 0; }
  int parity() const { return int((tow / kSubframeSeconds) % 2); }
  GstTime subframe_start() const { return from_seconds(seconds() - tow % kSubframeSeconds); }
  int page_slot() const { return int((tow % kSubframeSeconds) / kPageSeconds); }

  // 32-bit form used inside MAC inputs: wn mod 4096 (12 bits) | tow (20 bits).
  uint32_t mac_encoding() const { return ((wn % 4096u) << 20) | tow; }

  GstTime operator+(int64_t s) const { return from_seconds(seconds() + s); }
  GstTime operator-(int64_t s) const { return from_seconds(seconds() - s); }
  int64_t operator-(const GstTime& o) const { return seconds() - o.seconds(); }
  GstTime& operator+=(int64_t s) { return *this = *this + s; }

  auto operator<=>(const GstTime&) const = default;

  std::string to_string() const;
};

}  // namespace osnma
