#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "osnma/inav.hpp"

namespace osnma {

enum class BlockKind : uint8_t { Ephemeris, Timing };

std::span<const int> required_words(BlockKind kind);  // {1..5} or {6,10}
BlockKind block_kind_for_adkd(int adkd);

struct WordObservation {
  WordPayload payload{};
  GstTime end;        // end of the page that carried it
  int64_t sf = 0;     // sub-frame index it was observed in
};

enum class LinkReason : uint8_t { Observed, Cop };

struct Applicability {
  LinkReason reason = LinkReason::Observed;
  std::string via_tag;  // tag id whose COP justified the link
};

// Navigation data known to be one batch for one satellite.
struct NavDataBlock {
  uint32_t id = 0;
  uint8_t svid = 0;
  BlockKind kind = BlockKind::Ephemeris;
  std::optional<uint16_t> iod;
  std::map<int, WordObservation> words;  // earliest observation per word type
  int64_t first_seen_sf = 0;
  std::map<int64_t, Applicability> applicable_sfs;

  bool complete() const;
  bool applies_to(int64_t sf) const { return applicable_sfs.count(sf) != 0; }
  std::string label() const;
};

}  // namespace osnma
