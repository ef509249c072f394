#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osnma/bits.hpp"
#include "osnma/chain.hpp"
#include "osnma/subframe.hpp"

namespace osnma {

enum class SlotKind : uint8_t { SelfAdkd0, CrossAdkd0, Flex, SelfAdkd4, SelfAdkd12, CrossAdkd12 };

std::string_view slot_label(SlotKind kind);  // 00S 00E FLX 04S 12S 12E
SlotKind slot_kind_from_label(std::string_view label);
int slot_adkd(SlotKind kind);
bool slot_is_self(SlotKind kind);
inline bool slot_is_cross_adkd0(SlotKind kind) { return kind == SlotKind::CrossAdkd0 || kind == SlotKind::Flex; }

struct TagSequence {
  std::vector<SlotKind> even;
  std::vector<SlotKind> odd;

  const std::vector<SlotKind>& for_parity(int parity) const { return parity ? odd : even; }
  std::vector<int> flex_slots(int parity) const;
  // Throws ConfigInvalid.
  void validate(const ChainConfig& cfg) const;

  // Table 34: even [00S FLX 04S FLX 12S 00E], odd [00S FLX 00E 12S 00E 12E].
  static TagSequence operational();

  bool operator==(const TagSequence&) const = default;
};

inline constexpr uint8_t kDummyPrn = 255;

struct TagInfo {
  uint8_t prn_d = 0;
  uint8_t adkd = 0;
  uint8_t cop = 0;

  uint16_t packed() const { return uint16_t(prn_d) << 8 | uint16_t(adkd & 15) << 4 | (cop & 15); }
  static TagInfo unpack(uint16_t v) { return {uint8_t(v >> 8), uint8_t(v >> 4 & 15), uint8_t(v & 15)}; }
};

struct TagRecord {
  uint64_t tag_value = 0;
  uint8_t prn_d = 0;
  uint8_t adkd = 0;
  uint8_t cop = 0;
  int slot = 0;
  uint8_t authenticating_svid = 0;
  GstTime sf_start;
  SlotKind slot_kind = SlotKind::SelfAdkd0;

  TagInfo info() const { return {prn_d, adkd, cop}; }
  bool dummy() const { return prn_d == kDummyPrn; }
  // E<emitter>@<sf tow>#<slot>
  std::string id() const;

  bool operator==(const TagRecord&) const = default;
};

struct MackMessage {
  uint8_t svid = 0;
  GstTime sf_start;
  std::vector<std::optional<TagRecord>> tags;
  std::optional<uint16_t> macseq;
  PartialBits key_bits;
  std::array<bool, kPagesPerSubframe> pages_present{};
};

// First / last page touched by a tag slot (page p carries MACK bits [32p, 32p+32)).
int slot_first_page(const ChainConfig& cfg, int slot);
int slot_last_page(const ChainConfig& cfg, int slot);

MackMessage assemble_mack(uint8_t svid, GstTime sf_start,
                          const std::array<std::optional<OsnmaField>, kPagesPerSubframe>& fields,
                          const ChainConfig& cfg, const TagSequence& seq);
MackMessage assemble_mack(const SubFrameBuffer& buffer, const ChainConfig& cfg, const TagSequence& seq);

// Tags whose slot and position can be trusted structurally.
std::vector<TagRecord> usable_tags(const MackMessage& msg, const TagSequence& seq);

// Union of known key bits; throws ConflictingKeyBits.
PartialBits union_key_bits(std::span<const MackMessage> messages);
// Candidate key iff every bit is covered. chain_index is left at 0.
std::optional<TeslaKey> merge_key_bits(std::span<const MackMessage> messages, const ChainConfig& cfg);

struct HkrootBlock {
  std::array<uint8_t, kPagesPerSubframe> bytes{};
  std::array<bool, kPagesPerSubframe> present{};
  int present_count = 0;
  bool complete() const { return present_count == kPagesPerSubframe; }
  bool empty() const { return present_count == 0; }
};
HkrootBlock collect_hkroot(const SubFrameBuffer& buffer);

// Content of one satellite's MACK for one sub-frame, in slot order.
struct MackContent {
  std::vector<TagRecord> tags;
  uint16_t macseq = 0;
  std::vector<uint8_t> key;
};
// 15 MACK chunks of 32 bits; padding bits are zero.
std::array<uint32_t, kPagesPerSubframe> encode_mack(const MackContent& content, const ChainConfig& cfg);

std::string mack_to_json(const MackMessage& msg);

}  // namespace osnma
