#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "osnma/error.hpp"
#include "osnma/events.hpp"
#include "osnma/nav_store.hpp"
#include "osnma/policy.hpp"
#include "osnma/records.hpp"
#include "osnma/subframe.hpp"
#include "osnma/tesla.hpp"

namespace osnma {

struct EngineOptions {
  FixRule fix_rule;
  // TTFAF origin; defaults to the GST of the first record handed to the engine.
  std::optional<GstTime> origin;
  int64_t max_key_gap = kDefaultMaxKeyGap;
  // On a forgery, also search cop 1..15 over other blocks for the value the tag really signed.
  bool search_authentic_cop = true;
};

struct EngineStats {
  size_t pages = 0;
  size_t bad_crc = 0;
  size_t bad_flags = 0;
  size_t bad_page_type = 0;
  size_t slot_conflicts = 0;
  size_t duplicates = 0;
  size_t key_conflicts = 0;
  size_t late_tags = 0;
  size_t expired_tags = 0;
  size_t cop_links = 0;
};

struct AuthenticatedSet {
  std::set<uint8_t> ephemeris;
  std::set<uint8_t> timing;
};

bool detect_fix(const AuthenticatedSet& auth, const FixRule& rule);

// A parsed page, reusable across engine instances (the sweep parses once).
struct PreparedPage {
  PageRecord record;
  std::optional<InavPage> page;
  std::optional<ErrorCode> parse_error;
};
PreparedPage prepare_page(const PageRecord& rec);

class Engine {
 public:
  Engine(HotStart anchor, TimeSyncPolicy policy, EngineOptions options = {});

  // Throws OutOfOrderInput.
  std::vector<AuthEvent> process_page(const PageRecord& rec);
  std::vector<AuthEvent> process(const PreparedPage& page);

  const std::vector<AuthEvent>& events() const { return log_; }
  bool has_fix() const { return fix_time_.has_value(); }
  std::optional<GstTime> fix_time() const { return fix_time_; }
  std::optional<int64_t> ttfaf_seconds() const;
  const EngineStats& stats() const { return stats_; }
  const NavStore& store() const { return store_; }
  const TimeSyncPolicy& policy() const { return policy_; }
  const AuthenticatedSet& authenticated() const { return auth_; }

  // Key-start time of the key disclosed in sub-frame key_sf.
  GstTime key_start(int64_t key_sf) const;
  GstTime tag_end(const TagRecord& tag) const;

 private:
  struct PendingTag {
    TagRecord tag;
    int64_t key_sf = 0;
  };
  struct TagOutcome {
    bool verified = false;
    const NavDataBlock* block = nullptr;
    GstTime latest_bit;
  };
  struct Batch {
    std::vector<AuthEvent> keys, tags, data;
  };

  void on_mack(uint8_t svid, int64_t sf, Batch& batch);
  void try_keys(Batch& batch);
  void try_tags(Batch& batch);
  std::optional<bool> macseq_ok(uint8_t svid, int64_t sf, Batch& batch);
  // Block restricted to words received in time; nullopt if incomplete.
  std::optional<NavDataBlock> eligible_view(const NavDataBlock& b, GstTime deadline, GstTime& latest) const;
  void check_forgery(const TagRecord& tag, GstTime deadline, const TeslaKey& key, Batch& batch);
  std::vector<AuthEvent> finish(Batch& batch);

  HotStart anchor_;
  TimeSyncPolicy policy_;
  EngineOptions options_;
  KeyChain chain_;
  NavStore store_;
  SubFrameAssembler assembler_;

  std::optional<GstTime> last_gst_;
  std::optional<GstTime> origin_;
  GstTime now_;

  std::map<int64_t, std::map<uint8_t, MackMessage>> macks_;
  std::set<int64_t> key_dirty_;
  std::set<std::vector<uint8_t>> failed_keys_;
  std::map<std::pair<uint8_t, int64_t>, bool> macseq_result_;
  std::set<std::string> seen_tags_;
  std::vector<PendingTag> pending_;
  std::map<std::string, std::vector<CopLink>> cop_links_;

  AuthenticatedSet auth_;
  std::set<uint32_t> authenticated_blocks_;
  std::optional<GstTime> fix_time_;
  std::vector<AuthEvent> log_;
  EngineStats stats_;
};

}  // namespace osnma
