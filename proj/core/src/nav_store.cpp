#include "osnma/nav_store.hpp"

#include <algorithm>

namespace osnma {

NavDataBlock& NavStore::create(uint8_t svid, BlockKind kind, int64_t sf, std::optional<uint16_t> iod) {
  NavDataBlock b;
  b.id = next_id_++;
  b.svid = svid;
  b.kind = kind;
  b.iod = iod;
  b.first_seen_sf = sf;
  return blocks_.emplace(b.id, std::move(b)).first->second;
}

void NavStore::add(NavDataBlock& b, int wt, const WordObservation& obs, std::vector<uint32_t>& changed) {
  auto it = b.words.find(wt);
  if (it == b.words.end()) {
    b.words.emplace(wt, obs);
  } else if (it->second.payload != obs.payload) {
    ++conflicts_;
    return;
  }
  b.applicable_sfs.emplace(obs.sf, Applicability{});
  changed.push_back(b.id);
}

std::vector<uint32_t> NavStore::observe(const NavWord& word, GstTime end) {
  std::vector<uint32_t> changed;
  const int wt = word.word_type;
  const bool eph = wt >= 1 && wt <= 5;
  const bool timing = wt == 6 || wt == 10;
  if (!eph && !timing) return changed;

  const int64_t sf = word.gst.subframe_index();
  const WordObservation obs{word.payload, end, sf};
  const SvSf key{word.svid, sf};

  if (word.iod_nav && !sf_iod_.count(key)) {
    sf_iod_[key] = *word.iod_nav;
    iod_obs_.push_back({word.svid, sf, *word.iod_nav});
  }

  if (!iod_link_) {
    const BlockKind kind = eph ? BlockKind::Ephemeris : BlockKind::Timing;
    auto [it, fresh] = by_sf_.try_emplace({key, kind}, 0);
    if (fresh) it->second = create(word.svid, kind, sf, std::nullopt).id;
    NavDataBlock& b = blocks_.at(it->second);
    if (word.iod_nav && !b.iod) b.iod = word.iod_nav;
    add(b, wt, obs, changed);
    return changed;
  }

  if (timing) {
    auto cur = timing_current_.find(word.svid);
    NavDataBlock* b = cur == timing_current_.end() ? nullptr : &blocks_.at(cur->second);
    if (b) {
      auto w = b->words.find(wt);
      if (w != b->words.end() && w->second.payload != word.payload) b = nullptr;
    }
    if (!b) {
      b = &create(word.svid, BlockKind::Timing, sf, std::nullopt);
      timing_current_[word.svid] = b->id;
    }
    add(*b, wt, obs, changed);
    return changed;
  }

  auto ephemeris_block = [&](uint16_t iod) -> NavDataBlock& {
    auto [it, fresh] = eph_by_iod_.try_emplace({word.svid, iod}, 0);
    if (fresh) it->second = create(word.svid, BlockKind::Ephemeris, sf, iod).id;
    return blocks_.at(it->second);
  };

  if (wt == 5) {
    auto iod = sf_iod_.find(key);
    if (iod == sf_iod_.end()) {
      pending_wt5_.try_emplace(key, obs);
      return changed;
    }
    add(ephemeris_block(iod->second), 5, obs, changed);
    return changed;
  }

  NavDataBlock& b = ephemeris_block(*word.iod_nav);
  add(b, wt, obs, changed);
  // A WT5 seen earlier in this sub-frame takes the IOD of the sub-frame.
  auto pending = pending_wt5_.find(key);
  if (pending != pending_wt5_.end() && sf_iod_[key] == *word.iod_nav) {
    add(b, 5, pending->second, changed);
    pending_wt5_.erase(pending);
  }
  return changed;
}

std::vector<CopLink> NavStore::link_by_cop(const TagRecord& tag) {
  std::vector<CopLink> out;
  if (tag.cop < 2 || tag.dummy() || (tag.adkd != 0 && tag.adkd != 4 && tag.adkd != 12)) return out;
  const BlockKind kind = block_kind_for_adkd(tag.adkd);
  const int64_t m = tag.sf_start.subframe_index();
  for (auto& [id, b] : blocks_) {
    if (b.svid != tag.prn_d || b.kind != kind) continue;
    auto obs = b.applicable_sfs.find(m - 1);
    if (obs == b.applicable_sfs.end() || obs->second.reason != LinkReason::Observed) continue;
    CopLink link{tag.id(), id, tag.cop, {}};
    for (int64_t sf = m - tag.cop; sf <= m - 2; ++sf) {
      if (b.applicable_sfs.emplace(sf, Applicability{LinkReason::Cop, tag.id()}).second)
        link.added_sfs.push_back(sf);
    }
    out.push_back(std::move(link));
  }
  return out;
}

const NavDataBlock* NavStore::block(uint32_t id) const {
  auto it = blocks_.find(id);
  return it == blocks_.end() ? nullptr : &it->second;
}

std::vector<const NavDataBlock*> NavStore::candidates(uint8_t svid, BlockKind kind, int64_t sf) const {
  std::vector<const NavDataBlock*> out;
  for (const auto& [id, b] : blocks_)
    if (b.svid == svid && b.kind == kind && b.applies_to(sf)) out.push_back(&b);
  return out;
}

void NavStore::prune(int64_t min_sf) {
  for (auto it = blocks_.begin(); it != blocks_.end();) {
    const auto& b = it->second;
    const bool stale = b.applicable_sfs.empty() || b.applicable_sfs.rbegin()->first < min_sf;
    if (!stale) {
      ++it;
      continue;
    }
    const uint32_t id = it->first;
    std::erase_if(eph_by_iod_, [id](const auto& kv) { return kv.second == id; });
    std::erase_if(timing_current_, [id](const auto& kv) { return kv.second == id; });
    std::erase_if(by_sf_, [id](const auto& kv) { return kv.second == id; });
    it = blocks_.erase(it);
  }
  std::erase_if(sf_iod_, [min_sf](const auto& kv) { return kv.first.second < min_sf; });
  std::erase_if(pending_wt5_, [min_sf](const auto& kv) { return kv.first.second < min_sf; });
}

}  // namespace osnma
