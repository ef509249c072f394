#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osnma/chain.hpp"
#include "osnma/codec.hpp"
#include "osnma/nav_data.hpp"

namespace osnma {

enum class Verdict : uint8_t { Verified, Failed };
enum class Subject : uint8_t { Key, Tag, Macseq };

struct Evidence {
  std::optional<int64_t> key_sf;  // sub-frame index of the key used
  std::string tag_id;
  std::string block_id;
  std::string note;
};

struct AuthResult {
  Verdict verdict = Verdict::Failed;
  Subject subject = Subject::Key;
  Evidence evidence;
  GstTime gst_verified;
  int64_t hash_applications = 0;

  bool verified() const { return verdict == Verdict::Verified; }
};

inline constexpr int64_t kDefaultMaxKeyGap = 3600;

// One step down the chain: K_{i-1} = trunc(H(K_i || GST(SF_{i-1}) || alpha)).
std::vector<uint8_t> chain_step(std::span<const uint8_t> key, GstTime lower_sf, const ChainConfig& cfg);

// Throws GapTooLarge.
AuthResult verify_key(const TeslaKey& candidate, const TeslaKey& trusted, const ChainConfig& cfg,
                      int64_t max_gap = kDefaultMaxKeyGap);

// MAC truncated to tag_size_bits, most-significant bits first.
uint64_t compute_tag(const TeslaKey& key, std::span<const uint8_t> message, const ChainConfig& cfg);

// Payload words covered by an ADKD; throws DataIncomplete.
std::vector<WordPayload> adkd_payload(const NavDataBlock& data, int adkd);
// prn_d || prn_a || GST(sf) || slot || cop || payload
std::vector<uint8_t> tag_message(const TagRecord& tag, std::span<const WordPayload> payload);

// Throws KeyNotForTag, DataIncomplete.
AuthResult verify_tag(const TagRecord& tag, const NavDataBlock& data, const TeslaKey& key,
                      const ChainConfig& cfg);

uint16_t compute_macseq(const TeslaKey& key, uint8_t svid, GstTime sf_start,
                        std::span<const TagInfo> flex_infos, const ChainConfig& cfg);
// Throws MissingFlexInfo, KeyNotForTag.
AuthResult verify_macseq(const MackMessage& msg, const TeslaKey& key, const ChainConfig& cfg,
                         const TagSequence& seq);

// Trusted-key ratchet. Only verify() moves the floor, and only forward.
class KeyChain {
 public:
  KeyChain(TeslaKey root, ChainConfig cfg, int64_t max_gap = kDefaultMaxKeyGap);

  const TeslaKey& trusted() const { return trusted_; }
  const TeslaKey& root() const { return root_; }
  // Candidates at or below the floor are refused (Failed, note "below floor").
  AuthResult verify(const TeslaKey& candidate);
  // Key of any sub-frame between root and floor, hashed down from the floor.
  std::optional<TeslaKey> derive(int64_t sf_index);

 private:
  ChainConfig cfg_;
  TeslaKey root_;
  TeslaKey trusted_;
  int64_t max_gap_;
  std::map<int64_t, std::vector<uint8_t>> known_;
};

// Hot-start trust anchor as injected from the root-key file.
struct HotStart {
  ChainConfig chain;
  TeslaKey root;
  TagSequence sequence = TagSequence::operational();
};

// {wn, tow, key_hex, alpha_hex, hash_id, mac_id, maclt_id[, tag_sequence]}
HotStart parse_hotstart(const std::string& json_text);
std::string hotstart_to_json(const HotStart& hs);
HotStart load_hotstart(const std::string& path);
void save_hotstart(const std::string& path, const HotStart& hs);

}  // namespace osnma
