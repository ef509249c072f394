#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "osnma/gst.hpp"

namespace osnma {

enum class EventKind : uint8_t {
  KeyVerified,
  KeyFailed,
  TagVerified,
  TagFailed,
  MacseqFailed,
  DataAuthenticated,
  FixAuthenticated,
  ForgeryDetected,
};

std::string_view to_string(EventKind kind);

// How a block came to be applicable to the authenticated sub-frame.
struct LinkStep {
  int64_t sf = 0;
  bool via_cop = false;
  std::string via_tag;
};

struct AuthEvent {
  EventKind kind = EventKind::KeyVerified;
  GstTime gst;                  // page-end time at which the event fired
  std::vector<uint8_t> svids;

  // Evidence, filled as relevant for the kind.
  std::string tag_id;
  std::string block_id;
  std::optional<int> prn_d;
  std::optional<int> adkd;
  std::optional<int> cop;
  std::optional<int64_t> data_sf;
  std::optional<int64_t> key_sf;
  std::optional<GstTime> key_start;    // first key bit on air
  std::optional<GstTime> latest_bit;   // latest authenticated bit (tag or word)
  std::vector<LinkStep> links;
  std::optional<int> authenticated_cop;
  std::optional<int64_t> ttfaf_seconds;
  std::string note;
};

// {"kind":..,"wn":..,"tow":..,"svid":..,"detail":{..}}
std::string to_jsonl(const AuthEvent& ev);

}  // namespace osnma
