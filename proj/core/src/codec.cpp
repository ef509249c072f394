#include "osnma/codec.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "osnma/error.hpp"

namespace osnma {

std::string_view slot_label(SlotKind kind) {
  switch (kind) {
    case SlotKind::SelfAdkd0: return "00S";
    case SlotKind::CrossAdkd0: return "00E";
    case SlotKind::Flex: return "FLX";
    case SlotKind::SelfAdkd4: return "04S";
    case SlotKind::SelfAdkd12: return "12S";
    case SlotKind::CrossAdkd12: return "12E";
  }
  return "?";
}

SlotKind slot_kind_from_label(std::string_view label) {
  for (auto k : {SlotKind::SelfAdkd0, SlotKind::CrossAdkd0, SlotKind::Flex, SlotKind::SelfAdkd4,
                 SlotKind::SelfAdkd12, SlotKind::CrossAdkd12})
    if (slot_label(k) == label) return k;
  throw Error(ErrorCode::ConfigInvalid, "unknown slot kind " + std::string(label));
}

int slot_adkd(SlotKind kind) {
  switch (kind) {
    case SlotKind::SelfAdkd4: return 4;
    case SlotKind::SelfAdkd12:
    case SlotKind::CrossAdkd12: return 12;
    default: return 0;
  }
}

bool slot_is_self(SlotKind kind) {
  return kind == SlotKind::SelfAdkd0 || kind == SlotKind::SelfAdkd4 || kind == SlotKind::SelfAdkd12;
}

std::vector<int> TagSequence::flex_slots(int parity) const {
  std::vector<int> out;
  const auto& s = for_parity(parity);
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i] == SlotKind::Flex) out.push_back(int(i));
  return out;
}

void TagSequence::validate(const ChainConfig& cfg) const {
  for (const auto* s : {&even, &odd}) {
    if (int(s->size()) != cfg.tags_per_subframe)
      throw Error(ErrorCode::ConfigInvalid, "tag sequence length != tags_per_subframe");
    if (s->empty() || s->front() != SlotKind::SelfAdkd0)
      throw Error(ErrorCode::ConfigInvalid, "slot 0 must be 00S");
    if (std::find(s->begin() + 1, s->end(), SlotKind::SelfAdkd0) != s->end())
      throw Error(ErrorCode::ConfigInvalid, "00S only allowed in slot 0");
    if (cfg.tags_per_subframe == 6 && std::count_if(s->begin(), s->end(), slot_is_cross_adkd0) != 3)
      throw Error(ErrorCode::ConfigInvalid, "expected 3 ADKD0 cross slots");
  }
}

TagSequence TagSequence::operational() {
  using K = SlotKind;
  return {{K::SelfAdkd0, K::Flex, K::SelfAdkd4, K::Flex, K::SelfAdkd12, K::CrossAdkd0},
          {K::SelfAdkd0, K::Flex, K::CrossAdkd0, K::SelfAdkd12, K::CrossAdkd0, K::CrossAdkd12}};
}

std::string TagRecord::id() const {
  return "E" + std::to_string(authenticating_svid) + "@" + sf_start.to_string() + "#" +
         std::to_string(slot);
}

int slot_first_page(const ChainConfig& cfg, int slot) { return slot * cfg.entry_bits() / 32; }

int slot_last_page(const ChainConfig& cfg, int slot) {
  return ((slot + 1) * cfg.entry_bits() - 1) / 32;
}

MackMessage assemble_mack(uint8_t svid, GstTime sf_start,
                          const std::array<std::optional<OsnmaField>, kPagesPerSubframe>& fields,
                          const ChainConfig& cfg, const TagSequence& seq) {
  MackMessage msg;
  msg.svid = svid;
  msg.sf_start = sf_start;
  std::array<uint8_t, kPagesPerSubframe * 4> mack{};
  for (int p = 0; p < kPagesPerSubframe; ++p) {
    if (!fields[size_t(p)]) continue;
    msg.pages_present[size_t(p)] = true;
    std::copy(fields[size_t(p)]->begin() + 1, fields[size_t(p)]->end(), mack.begin() + 4 * p);
  }
  auto covered = [&](int first_bit, int count) {
    for (int p = first_bit / 32; p <= (first_bit + count - 1) / 32; ++p)
      if (!msg.pages_present[size_t(p)]) return false;
    return true;
  };

  const auto& kinds = seq.for_parity(sf_start.parity());
  const int eb = cfg.entry_bits();
  msg.tags.resize(size_t(cfg.tags_per_subframe));
  // MACSEQ is read on its own so a lost tag-0 page does not take it along.
  if (covered(cfg.tag_size_bits, cfg.macseq_size_bits))
    msg.macseq = uint16_t(read_bits(mack, size_t(cfg.tag_size_bits), size_t(cfg.macseq_size_bits)));
  for (int s = 0; s < cfg.tags_per_subframe; ++s) {
    const int off = s * eb;
    if (!covered(off, eb)) continue;
    TagRecord t;
    t.tag_value = read_bits(mack, size_t(off), size_t(cfg.tag_size_bits));
    t.slot = s;
    t.authenticating_svid = svid;
    t.sf_start = sf_start;
    t.slot_kind = kinds[size_t(s)];
    const size_t info = size_t(off + cfg.tag_size_bits);
    if (s == 0) {
      t.prn_d = svid;
      t.adkd = 0;
      t.cop = uint8_t(read_bits(mack, info + size_t(cfg.macseq_size_bits), 4));
    } else {
      TagInfo ti = TagInfo::unpack(uint16_t(read_bits(mack, info, size_t(cfg.taginfo_size_bits))));
      t.prn_d = ti.prn_d;
      t.adkd = ti.adkd;
      t.cop = ti.cop;
    }
    msg.tags[size_t(s)] = t;
  }

  msg.key_bits = PartialBits(size_t(cfg.key_size_bits));
  const int ko = cfg.key_offset_bits();
  for (int i = 0; i < cfg.key_size_bits; ++i)
    if (msg.pages_present[size_t((ko + i) / 32)]) msg.key_bits.set(size_t(i), read_bit(mack, size_t(ko + i)));
  return msg;
}

MackMessage assemble_mack(const SubFrameBuffer& buffer, const ChainConfig& cfg, const TagSequence& seq) {
  return assemble_mack(buffer.svid, buffer.sf_start, buffer.osnma_fields, cfg, seq);
}

static bool kind_matches(const TagRecord& t) {
  if (t.dummy()) return true;
  if (int(t.adkd) != slot_adkd(t.slot_kind)) return false;
  return !slot_is_self(t.slot_kind) || t.prn_d == t.authenticating_svid;
}

std::vector<TagRecord> usable_tags(const MackMessage& msg, const TagSequence& seq) {
  const auto flex = seq.flex_slots(msg.sf_start.parity());
  bool flex_ok = msg.macseq.has_value();
  for (int s : flex)
    if (size_t(s) >= msg.tags.size() || !msg.tags[size_t(s)]) flex_ok = false;
  std::vector<TagRecord> out;
  for (const auto& t : msg.tags) {
    if (!t) continue;
    if (t->slot_kind == SlotKind::Flex && !flex_ok) continue;
    if (!kind_matches(*t)) continue;
    out.push_back(*t);
  }
  return out;
}

PartialBits union_key_bits(std::span<const MackMessage> messages) {
  PartialBits acc;
  for (const auto& m : messages) {
    if (acc.size() == 0) {
      acc = PartialBits(m.key_bits.size());
    } else if (m.key_bits.size() != acc.size()) {
      throw Error(ErrorCode::ConfigInvalid, "key sizes differ");
    }
    for (size_t i = 0; i < acc.size(); ++i) {
      if (!m.key_bits.known(i)) continue;
      if (acc.known(i) && acc.value(i) != m.key_bits.value(i))
        throw Error(ErrorCode::ConflictingKeyBits, "bit " + std::to_string(i));
      acc.set(i, m.key_bits.value(i));
    }
  }
  return acc;
}

std::optional<TeslaKey> merge_key_bits(std::span<const MackMessage> messages, const ChainConfig& cfg) {
  if (messages.empty()) return std::nullopt;
  for (const auto& m : messages)
    if (m.sf_start != messages.front().sf_start)
      throw Error(ErrorCode::ConfigInvalid, "messages from different sub-frames");
  PartialBits u = union_key_bits(messages);
  if (int(u.size()) != cfg.key_size_bits || !u.complete()) return std::nullopt;
  TeslaKey k;
  k.bits = u.bytes();
  k.gst_sf = messages.front().sf_start;
  return k;
}

HkrootBlock collect_hkroot(const SubFrameBuffer& buffer) {
  HkrootBlock h;
  for (int p = 0; p < kPagesPerSubframe; ++p) {
    if (!buffer.osnma_fields[size_t(p)]) continue;
    h.bytes[size_t(p)] = hkroot_byte(*buffer.osnma_fields[size_t(p)]);
    h.present[size_t(p)] = true;
    ++h.present_count;
  }
  return h;
}

std::array<uint32_t, kPagesPerSubframe> encode_mack(const MackContent& content, const ChainConfig& cfg) {
  if (int(content.tags.size()) != cfg.tags_per_subframe)
    throw Error(ErrorCode::ConfigInvalid, "tag count != tags_per_subframe");
  if (int(content.key.size()) != cfg.key_bytes()) throw Error(ErrorCode::ConfigInvalid, "key size");
  std::array<uint8_t, kPagesPerSubframe * 4> mack{};
  const int eb = cfg.entry_bits();
  for (int s = 0; s < cfg.tags_per_subframe; ++s) {
    const auto& t = content.tags[size_t(s)];
    const size_t off = size_t(s * eb);
    write_bits(mack, off, size_t(cfg.tag_size_bits), t.tag_value);
    const size_t info = off + size_t(cfg.tag_size_bits);
    if (s == 0) {
      write_bits(mack, info, size_t(cfg.macseq_size_bits), content.macseq);
      write_bits(mack, info + size_t(cfg.macseq_size_bits), 4, t.cop);
    } else {
      write_bits(mack, info, size_t(cfg.taginfo_size_bits), t.info().packed());
    }
  }
  copy_bits(content.key, 0, mack, size_t(cfg.key_offset_bits()), size_t(cfg.key_size_bits));
  std::array<uint32_t, kPagesPerSubframe> out{};
  for (int p = 0; p < kPagesPerSubframe; ++p) out[size_t(p)] = uint32_t(read_bits(mack, size_t(32 * p), 32));
  return out;
}

std::string mack_to_json(const MackMessage& msg) {
  nlohmann::json j;
  j["svid"] = msg.svid;
  j["sf"] = {{"wn", msg.sf_start.wn}, {"tow", msg.sf_start.tow}};
  auto tags = nlohmann::json::array();
  for (size_t s = 0; s < msg.tags.size(); ++s) {
    if (!msg.tags[s]) {
      tags.push_back(nullptr);
      continue;
    }
    const auto& t = *msg.tags[s];
    char hex[17];
    std::snprintf(hex, sizeof hex, "%010llx", static_cast<unsigned long long>(t.tag_value));
    tags.push_back({{"slot", t.slot}, {"kind", slot_label(t.slot_kind)}, {"tag", hex},
                    {"prn_d", t.prn_d}, {"adkd", t.adkd}, {"cop", t.cop}});
  }
  j["tags"] = tags;
  j["macseq"] = msg.macseq ? nlohmann::json(*msg.macseq) : nlohmann::json(nullptr);
  j["key_bits"] = msg.key_bits.bitmap();
  return j.dump();
}

}  // namespace osnma
