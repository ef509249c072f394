#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osnma/codec.hpp"
#include "osnma/records.hpp"
#include "osnma/tesla.hpp"

namespace osnma {

struct LossModel {
  enum class Kind : uint8_t { None, Bernoulli, GilbertElliott };
  Kind kind = Kind::None;
  double p = 0.0;            // bernoulli loss probability
  double p_good_bad = 0.0;   // per-page transition probabilities
  double p_bad_good = 1.0;
  double loss_good = 0.0;
  double loss_bad = 1.0;

  static LossModel none() { return {}; }
  static LossModel bernoulli(double p);
  static LossModel gilbert_elliott(double p_good_bad, double p_bad_good, double loss_good, double loss_bad);
  // Long-run page loss rate.
  double stationary_loss() const;
  void validate() const;
};

// [from_s, to_s) relative to the scenario start.
struct Interval {
  int64_t from_s = 0;
  int64_t to_s = 0;
};

struct SatelliteConfig {
  uint8_t svid = 0;
  bool connected = true;
  std::optional<int64_t> connect_at_sf;     // relative sub-frame index
  std::optional<int64_t> disconnect_at_sf;
  std::vector<Interval> visible;            // empty: always visible
  LossModel loss;
  int iod_phase = 0;
};

struct Adversary {
  enum class Kind : uint8_t { None, CopForge };
  Kind kind = Kind::None;
  int64_t at_sf = 0;  // relative sub-frame index of the data change being hidden
};

using WtSchedule = std::array<std::array<int, kPagesPerSubframe>, 2>;
WtSchedule default_wt_schedule();

struct ScenarioConfig {
  std::string name = "custom";
  GstTime start{1267, 35400};
  int64_t duration_s = 300;
  std::vector<SatelliteConfig> satellites;
  int iod_change_period_sf = 20;  // 0: data never changes
  WtSchedule wt_schedule = default_wt_schedule();
  TagSequence tag_sequence = TagSequence::operational();
  // Closeness order of candidate satellites; empty: configuration order.
  std::vector<uint8_t> cross_auth_ranking;
  // Explicit per-sub-frame (relative index) rankings, used as-is for every emitter.
  std::map<int64_t, std::vector<uint8_t>> ranking_by_sf;
  bool rotate_ranking = true;
  // Connected satellites also cross-authenticate each other (idealized placement).
  bool cross_auth_connected = false;
  Adversary adversary;
  uint64_t seed = 1;
  ChainConfig chain;

  void validate() const;
};

struct TruthTag {
  int64_t sf = 0;
  uint8_t emitter = 0;
  int slot = 0;
  SlotKind kind = SlotKind::SelfAdkd0;
  uint8_t prn_d = 0;
  uint8_t adkd = 0;
  uint8_t cop = 0;
  bool target_connected = false;
};

struct GroundTruth {
  std::map<int64_t, std::vector<uint8_t>> keys;  // absolute sub-frame index -> chain key
  std::vector<TruthTag> tags;
  std::map<uint8_t, std::map<int64_t, uint16_t>> iod;  // svid -> sf -> IOD
  std::map<uint8_t, std::vector<int64_t>> connected_sfs;
  std::vector<std::pair<uint8_t, GstTime>> lost_pages;
  std::string adversary_note;

  std::string to_json() const;
};

struct ScenarioOutput {
  std::vector<PageRecord> records;
  GroundTruth truth;
  HotStart hotstart;
};

struct TagPlan {
  SlotKind kind = SlotKind::SelfAdkd0;
  uint8_t prn_d = kDummyPrn;
  uint8_t adkd = 0;
  uint8_t cop = 0;
  std::vector<WordPayload> payload;
};

// Signs one emitter's MACK: tags under K(sf+1) (K(sf+11) for ADKD12), MACSEQ
// over the FLX tag-info, and the disclosed key K(sf). Dummy plans get tag 0.
std::array<uint32_t, kPagesPerSubframe> sign_subframe(const ChainConfig& cfg, const TagSequence& seq,
                                                      uint8_t emitter, GstTime sf,
                                                      std::span<const TagPlan> plan,
                                                      std::span<const uint8_t> disclosed_key,
                                                      std::span<const uint8_t> tag_key,
                                                      std::span<const uint8_t> adkd12_key);

class Scenario {
 public:
  explicit Scenario(ScenarioConfig cfg);  // throws ConfigInvalid

  const ScenarioConfig& config() const { return cfg_; }
  ScenarioOutput generate() const;
  // Throws AdversaryInapplicable.
  void apply_adversary(ScenarioOutput& out, const Adversary& adv) const;

  int64_t start_sf() const { return cfg_.start.subframe_index(); }
  int64_t subframe_count() const;
  bool connected_at(uint8_t svid, int64_t sf) const;  // absolute sf
  int64_t batch(uint8_t svid, int64_t sf) const;
  int64_t batch_start(uint8_t svid, int64_t sf) const;
  uint16_t iod(uint8_t svid, int64_t sf) const;
  // COP for a tag of sub-frame data_sf + 1 covering data_sf.
  int cop(uint8_t svid, int64_t data_sf, int adkd) const;
  WordPayload word(uint8_t svid, int64_t sf, int wt) const;
  const std::vector<uint8_t>& key(int64_t sf) const;
  HotStart hotstart() const;
  std::vector<TagPlan> plan_tags(uint8_t emitter, int64_t sf) const;

 private:
  const SatelliteConfig& sat(uint8_t svid) const;
  std::vector<uint8_t> candidates(uint8_t emitter, int64_t sf) const;

  ScenarioConfig cfg_;
  std::map<int64_t, std::vector<uint8_t>> keys_;
};

struct TagCounts {
  int64_t sf = 0;
  int for_connected = 0;
  int for_disconnected = 0;
};
// ADKD0 tags per sub-frame split by the target's connection status.
std::vector<TagCounts> count_tags(const GroundTruth& truth);

// Named presets: ideal_4conn, ideal_4conn_ops, open_sky_4c4d, open_sky,
// soft_urban, hard_urban, iod_24h, cop_forge.
ScenarioConfig preset(const std::string& name, uint64_t seed = 1);
std::vector<std::string> preset_names();

}  // namespace osnma
