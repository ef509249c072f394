#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "osnma/codec.hpp"
#include "osnma/nav_data.hpp"

namespace osnma {

struct IodObservation {
  uint8_t svid = 0;
  int64_t sf = 0;
  uint16_t iod = 0;
  bool operator==(const IodObservation&) const = default;
};

struct CopLink {
  std::string tag_id;
  uint32_t block_id = 0;
  int cop = 0;
  std::vector<int64_t> added_sfs;
};

// Navigation words grouped into blocks. With the IOD link, ephemeris blocks are
// keyed by (svid, IOD) and timing blocks merge while payloads agree; without it
// every block covers exactly one sub-frame.
class NavStore {
 public:
  explicit NavStore(bool iod_link) : iod_link_(iod_link) {}

  // end: time the word was fully received. Returns ids of blocks that changed.
  std::vector<uint32_t> observe(const NavWord& word, GstTime end);

  // For a tag of sub-frame m with cop >= 2: blocks observed at m-1 become
  // applicable to m-cop .. m-2.
  std::vector<CopLink> link_by_cop(const TagRecord& tag);

  const NavDataBlock* block(uint32_t id) const;
  std::vector<const NavDataBlock*> candidates(uint8_t svid, BlockKind kind, int64_t sf) const;
  const std::vector<IodObservation>& iod_observations() const { return iod_obs_; }
  size_t block_count() const { return blocks_.size(); }
  size_t payload_conflicts() const { return conflicts_; }

  // Drops blocks with no applicability at or after min_sf.
  void prune(int64_t min_sf);

 private:
  using SvSf = std::pair<uint8_t, int64_t>;

  NavDataBlock& create(uint8_t svid, BlockKind kind, int64_t sf, std::optional<uint16_t> iod);
  void add(NavDataBlock& b, int wt, const WordObservation& obs, std::vector<uint32_t>& changed);

  bool iod_link_;
  uint32_t next_id_ = 1;
  std::map<uint32_t, NavDataBlock> blocks_;
  std::map<std::pair<uint8_t, uint16_t>, uint32_t> eph_by_iod_;
  std::map<uint8_t, uint32_t> timing_current_;
  std::map<std::pair<SvSf, BlockKind>, uint32_t> by_sf_;
  std::map<SvSf, uint16_t> sf_iod_;
  std::map<SvSf, WordObservation> pending_wt5_;
  std::vector<IodObservation> iod_obs_;
  size_t conflicts_ = 0;
};

}  // namespace osnma
