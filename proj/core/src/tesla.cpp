#include "osnma/tesla.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "osnma/crypto.hpp"
#include "osnma/error.hpp"

namespace osnma {
namespace {

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(uint8_t(v >> s));
}

uint64_t top_bits(const Digest256& d, int n) {
  return read_bits(d, 0, size_t(n));
}

}  // namespace

void ChainConfig::validate() const {
  if (key_size_bits <= 0 || key_size_bits % 8 || key_size_bits > 256)
    throw Error(ErrorCode::ConfigInvalid, "key_size_bits");
  if (tag_size_bits < 8 || tag_size_bits > 64) throw Error(ErrorCode::ConfigInvalid, "tag_size_bits");
  if (taginfo_size_bits != 16) throw Error(ErrorCode::ConfigInvalid, "taginfo_size_bits must be 16");
  if (macseq_size_bits != 12) throw Error(ErrorCode::ConfigInvalid, "macseq_size_bits must be 12");
  if (tags_per_subframe < 1) throw Error(ErrorCode::ConfigInvalid, "tags_per_subframe");
  if (meaningful_bits() > kPagesPerSubframe * 32)
    throw Error(ErrorCode::ConfigInvalid, "MACK layout exceeds 480 bits");
  if (hash_id != HashFunction::Sha256 || mac_id != MacFunction::HmacSha256)
    throw Error(ErrorCode::ConfigInvalid, "unsupported hash/mac function");
}

std::vector<uint8_t> chain_step(std::span<const uint8_t> key, GstTime lower_sf, const ChainConfig& cfg) {
  std::vector<uint8_t> msg(key.begin(), key.end());
  put_u32(msg, lower_sf.mac_encoding());
  msg.insert(msg.end(), cfg.alpha.begin(), cfg.alpha.end());
  Digest256 d = sha256(msg);
  return {d.begin(), d.begin() + cfg.key_bytes()};
}

AuthResult verify_key(const TeslaKey& candidate, const TeslaKey& trusted, const ChainConfig& cfg,
                      int64_t max_gap) {
  AuthResult r;
  r.subject = Subject::Key;
  r.gst_verified = candidate.gst_sf;
  r.evidence.key_sf = candidate.gst_sf.subframe_index();
  const int64_t diff = candidate.gst_sf - trusted.gst_sf;
  if (diff < 0 || diff % GstTime::kSubframeSeconds) {
    r.evidence.note = "candidate precedes trusted key";
    return r;
  }
  const int64_t n = diff / GstTime::kSubframeSeconds;
  if (n > max_gap) throw Error(ErrorCode::GapTooLarge, std::to_string(n) + " sub-frames");
  std::vector<uint8_t> k = candidate.bits;
  GstTime sf = candidate.gst_sf;
  for (int64_t i = 0; i < n; ++i) {
    sf = sf - GstTime::kSubframeSeconds;
    k = chain_step(k, sf, cfg);
  }
  r.hash_applications = n;
  if (k == trusted.bits) r.verdict = Verdict::Verified;
  return r;
}

uint64_t compute_tag(const TeslaKey& key, std::span<const uint8_t> message, const ChainConfig& cfg) {
  return top_bits(hmac_sha256(key.bits, message), cfg.tag_size_bits);
}

std::vector<WordPayload> adkd_payload(const NavDataBlock& data, int adkd) {
  const BlockKind kind = block_kind_for_adkd(adkd);
  if (data.kind != kind) throw Error(ErrorCode::DataIncomplete, "block kind does not match ADKD");
  std::vector<WordPayload> out;
  for (int wt : required_words(kind)) {
    auto it = data.words.find(wt);
    if (it == data.words.end()) throw Error(ErrorCode::DataIncomplete, "missing WT" + std::to_string(wt));
    out.push_back(it->second.payload);
  }
  return out;
}

std::vector<uint8_t> tag_message(const TagRecord& tag, std::span<const WordPayload> payload) {
  std::vector<uint8_t> m;
  m.reserve(8 + payload.size() * 16);
  m.push_back(tag.prn_d);
  m.push_back(tag.authenticating_svid);
  put_u32(m, tag.sf_start.mac_encoding());
  m.push_back(uint8_t(tag.slot));
  m.push_back(tag.cop);
  for (const auto& w : payload) m.insert(m.end(), w.begin(), w.end());
  return m;
}

AuthResult verify_tag(const TagRecord& tag, const NavDataBlock& data, const TeslaKey& key,
                      const ChainConfig& cfg) {
  const GstTime expected = tag.sf_start + GstTime::kSubframeSeconds * key_delay_subframes(tag.adkd);
  if (key.gst_sf != expected) throw Error(ErrorCode::KeyNotForTag, tag.id());
  const auto payload = adkd_payload(data, tag.adkd);
  AuthResult r;
  r.subject = Subject::Tag;
  r.gst_verified = tag.sf_start;
  r.evidence.key_sf = key.gst_sf.subframe_index();
  r.evidence.tag_id = tag.id();
  r.evidence.block_id = data.label();
  if (compute_tag(key, tag_message(tag, payload), cfg) == tag.tag_value) r.verdict = Verdict::Verified;
  return r;
}

uint16_t compute_macseq(const TeslaKey& key, uint8_t svid, GstTime sf_start,
                        std::span<const TagInfo> flex_infos, const ChainConfig& cfg) {
  std::vector<uint8_t> m;
  m.push_back(svid);
  put_u32(m, sf_start.mac_encoding());
  for (const auto& ti : flex_infos) {
    uint16_t v = ti.packed();
    m.push_back(uint8_t(v >> 8));
    m.push_back(uint8_t(v));
  }
  return uint16_t(top_bits(hmac_sha256(key.bits, m), cfg.macseq_size_bits));
}

AuthResult verify_macseq(const MackMessage& msg, const TeslaKey& key, const ChainConfig& cfg,
                         const TagSequence& seq) {
  if (key.gst_sf != msg.sf_start + GstTime::kSubframeSeconds)
    throw Error(ErrorCode::KeyNotForTag, "MACSEQ key must be disclosed in the next sub-frame");
  if (!msg.macseq) throw Error(ErrorCode::MissingFlexInfo, "MACSEQ absent");
  std::vector<TagInfo> infos;
  for (int s : seq.flex_slots(msg.sf_start.parity())) {
    if (size_t(s) >= msg.tags.size() || !msg.tags[size_t(s)])
      throw Error(ErrorCode::MissingFlexInfo, "flex slot " + std::to_string(s));
    infos.push_back(msg.tags[size_t(s)]->info());
  }
  AuthResult r;
  r.subject = Subject::Macseq;
  r.gst_verified = msg.sf_start;
  r.evidence.key_sf = key.gst_sf.subframe_index();
  r.evidence.note = "svid " + std::to_string(msg.svid);
  if (compute_macseq(key, msg.svid, msg.sf_start, infos, cfg) == *msg.macseq) r.verdict = Verdict::Verified;
  return r;
}

KeyChain::KeyChain(TeslaKey root, ChainConfig cfg, int64_t max_gap)
    : cfg_(std::move(cfg)), root_(std::move(root)), trusted_(root_), max_gap_(max_gap) {
  cfg_.validate();
  if (int(root_.bits.size()) != cfg_.key_bytes()) throw Error(ErrorCode::ConfigInvalid, "root key size");
  if (!root_.gst_sf.is_subframe_start()) throw Error(ErrorCode::ConfigInvalid, "root key GST not sub-frame aligned");
  root_.chain_index = 0;
  trusted_ = root_;
  known_[root_.gst_sf.subframe_index()] = root_.bits;
}

AuthResult KeyChain::verify(const TeslaKey& candidate) {
  if (candidate.gst_sf <= trusted_.gst_sf) {
    AuthResult r;
    r.subject = Subject::Key;
    r.gst_verified = candidate.gst_sf;
    r.evidence.key_sf = candidate.gst_sf.subframe_index();
    r.evidence.note = "below floor";
    return r;
  }
  AuthResult r = verify_key(candidate, trusted_, cfg_, max_gap_);
  if (r.verified()) {
    trusted_ = candidate;
    trusted_.chain_index = (candidate.gst_sf - root_.gst_sf) / GstTime::kSubframeSeconds;
    known_[trusted_.gst_sf.subframe_index()] = trusted_.bits;
  }
  return r;
}

std::optional<TeslaKey> KeyChain::derive(int64_t sf_index) {
  const int64_t floor = trusted_.gst_sf.subframe_index();
  const int64_t root = root_.gst_sf.subframe_index();
  if (sf_index > floor || sf_index < root) return std::nullopt;
  auto it = known_.lower_bound(sf_index);
  int64_t idx = it->first;
  std::vector<uint8_t> k = it->second;
  while (idx > sf_index) {
    --idx;
    k = chain_step(k, GstTime::from_subframe_index(idx), cfg_);
    known_[idx] = k;
  }
  TeslaKey out;
  out.bits = k;
  out.gst_sf = GstTime::from_subframe_index(sf_index);
  out.chain_index = sf_index - root;
  return out;
}

HotStart parse_hotstart(const std::string& json_text) {
  HotStart hs;
  try {
    auto j = nlohmann::json::parse(json_text);
    hs.root.gst_sf = GstTime{j.at("wn").get<uint32_t>(), j.at("tow").get<uint32_t>()};
    hs.root.bits = from_hex(j.at("key_hex").get<std::string>());
    auto alpha = from_hex(j.at("alpha_hex").get<std::string>());
    if (alpha.size() != hs.chain.alpha.size()) throw Error(ErrorCode::ConfigInvalid, "alpha must be 48 bits");
    std::copy(alpha.begin(), alpha.end(), hs.chain.alpha.begin());
    hs.chain.hash_id = HashFunction(j.value("hash_id", 0));
    hs.chain.mac_id = MacFunction(j.value("mac_id", 0));
    hs.chain.maclt_id = j.value("maclt_id", 34);
    hs.chain.key_size_bits = int(hs.root.bits.size() * 8);
    hs.chain.tag_size_bits = j.value("tag_size_bits", 40);
    if (j.contains("tag_sequence")) {
      auto conv = [](const nlohmann::json& arr) {
        std::vector<SlotKind> v;
        for (const auto& s : arr) v.push_back(slot_kind_from_label(s.get<std::string>()));
        return v;
      };
      hs.sequence.even = conv(j["tag_sequence"].at("even"));
      hs.sequence.odd = conv(j["tag_sequence"].at("odd"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  hs.chain.validate();
  hs.sequence.validate(hs.chain);
  if (!hs.root.gst_sf.is_subframe_start()) throw Error(ErrorCode::ConfigInvalid, "root GST not sub-frame aligned");
  return hs;
}

std::string hotstart_to_json(const HotStart& hs) {
  nlohmann::ordered_json j;
  j["wn"] = hs.root.gst_sf.wn;
  j["tow"] = hs.root.gst_sf.tow;
  j["key_hex"] = to_hex(hs.root.bits);
  j["alpha_hex"] = to_hex(hs.chain.alpha);
  j["hash_id"] = int(hs.chain.hash_id);
  j["mac_id"] = int(hs.chain.mac_id);
  j["maclt_id"] = hs.chain.maclt_id;
  j["tag_size_bits"] = hs.chain.tag_size_bits;
  auto labels = [](const std::vector<SlotKind>& v) {
    std::vector<std::string> out;
    for (auto k : v) out.emplace_back(slot_label(k));
    return out;
  };
  j["tag_sequence"] = {{"even", labels(hs.sequence.even)}, {"odd", labels(hs.sequence.odd)}};
  return j.dump(2);
}

HotStart load_hotstart(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_hotstart(ss.str());
}

void save_hotstart(const std::string& path, const HotStart& hs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path);
  out << hotstart_to_json(hs) << '\n';
}

}  // namespace osnma
