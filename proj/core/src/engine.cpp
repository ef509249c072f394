#include "osnma/engine.hpp"

#include <algorithm>
#include <tuple>

#include "osnma/error.hpp"

namespace osnma {
namespace {

constexpr int64_t kPendingLifetimeSeconds = 300;
constexpr int64_t kMackRetentionSf = 12;
constexpr int64_t kBlockRetentionSf = 20;

}  // namespace

bool detect_fix(const AuthenticatedSet& auth, const FixRule& rule) {
  return int(auth.ephemeris.size()) >= rule.min_ephemeris_sats &&
         int(auth.timing.size()) >= rule.min_timing_sats;
}

PreparedPage prepare_page(const PageRecord& rec) {
  PreparedPage p;
  p.record = rec;
  try {
    p.page = parse_page(rec.page, rec.svid, rec.gst);
  } catch (const Error& e) {
    p.parse_error = e.code();
  }
  return p;
}

Engine::Engine(HotStart anchor, TimeSyncPolicy policy, EngineOptions options)
    : anchor_(std::move(anchor)),
      policy_(std::move(policy)),
      options_(options),
      chain_(anchor_.root, anchor_.chain, options.max_key_gap),
      store_(policy_.enable_iod_link) {
  policy_.validate();
  anchor_.sequence.validate(anchor_.chain);
}

GstTime Engine::key_start(int64_t key_sf) const {
  return GstTime::from_subframe_index(key_sf) + anchor_.chain.key_start_offset();
}

GstTime Engine::tag_end(const TagRecord& tag) const {
  return tag.sf_start + 2 * slot_last_page(anchor_.chain, tag.slot) + 1;
}

std::optional<int64_t> Engine::ttfaf_seconds() const {
  if (!fix_time_ || !origin_) return std::nullopt;
  return *fix_time_ - *origin_;
}

std::vector<AuthEvent> Engine::process_page(const PageRecord& rec) { return process(prepare_page(rec)); }

std::vector<AuthEvent> Engine::process(const PreparedPage& prep) {
  const PageRecord& rec = prep.record;
  if (last_gst_ && rec.gst < *last_gst_)
    throw Error(ErrorCode::OutOfOrderInput, rec.gst.to_string() + " after " + last_gst_->to_string());
  if (last_gst_ && rec.gst.subframe_index() != last_gst_->subframe_index()) {
    const int64_t sf = rec.gst.subframe_index();
    macks_.erase(macks_.begin(), macks_.lower_bound(sf - kMackRetentionSf));
    std::erase_if(macseq_result_, [sf](const auto& kv) { return kv.first.second < sf - kMackRetentionSf; });
    store_.prune(sf - kBlockRetentionSf);
  }
  last_gst_ = rec.gst;
  if (!origin_) origin_ = options_.origin.value_or(rec.gst);
  now_ = rec.gst + GstTime::kPageSeconds;
  ++stats_.pages;

  if (prep.parse_error) {
    switch (*prep.parse_error) {
      case ErrorCode::BadCrc: ++stats_.bad_crc; break;
      case ErrorCode::BadFlags: ++stats_.bad_flags; break;
      default: ++stats_.bad_page_type; break;
    }
    return {};
  }

  IngestResult ir;
  try {
    ir = assembler_.ingest_page(*prep.page);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SlotConflict) throw;
    ++stats_.slot_conflicts;
    return {};
  }
  if (ir.duplicate) {
    ++stats_.duplicates;
    return {};
  }

  Batch batch;
  store_.observe(extract_word(*prep.page), now_);
  if (!is_zero(extract_osnma_field(*prep.page))) on_mack(rec.svid, rec.gst.subframe_index(), batch);
  try_keys(batch);
  try_tags(batch);
  return finish(batch);
}

void Engine::on_mack(uint8_t svid, int64_t sf, Batch&) {
  const SubFrameBuffer* buf = assembler_.current(svid);
  if (!buf) return;
  std::array<std::optional<OsnmaField>, kPagesPerSubframe> fields;
  int present = 0;
  for (size_t p = 0; p < fields.size(); ++p) {
    if (buf->osnma_fields[p] && !is_zero(*buf->osnma_fields[p])) {
      fields[p] = buf->osnma_fields[p];
      ++present;
    }
  }
  MackMessage msg = assemble_mack(svid, buf->sf_start, fields, anchor_.chain, anchor_.sequence);
  const bool complete = present == kPagesPerSubframe;
  auto& slot = macks_[sf][svid];
  slot = msg;
  key_dirty_.insert(sf);
  if (!policy_.enable_page_level && !complete) return;

  for (const TagRecord& t : usable_tags(msg, anchor_.sequence)) {
    if (t.dummy()) continue;
    if (t.adkd != 0 && t.adkd != 4 && t.adkd != 12) continue;
    if (!seen_tags_.insert(t.id()).second) continue;
    pending_.push_back({t, sf + key_delay_subframes(t.adkd)});
    if (policy_.cop_active() && t.cop >= 2) {
      auto links = store_.link_by_cop(t);
      if (!links.empty()) {
        stats_.cop_links += links.size();
        auto& dst = cop_links_[t.id()];
        dst.insert(dst.end(), links.begin(), links.end());
      }
    }
  }
}

void Engine::try_keys(Batch& batch) {
  for (int64_t sf : key_dirty_) {
    if (sf <= chain_.trusted().gst_sf.subframe_index()) continue;
    auto mit = macks_.find(sf);
    if (mit == macks_.end()) continue;
    std::vector<std::pair<TeslaKey, std::vector<uint8_t>>> cands;
    auto single = [&](const MackMessage& m) {
      if (!m.key_bits.complete()) return;
      TeslaKey k;
      k.bits = m.key_bits.bytes();
      k.gst_sf = m.sf_start;
      cands.push_back({k, {m.svid}});
    };
    if (policy_.enable_page_level) {
      std::vector<MackMessage> msgs;
      std::vector<uint8_t> svids;
      for (const auto& [svid, m] : mit->second) {
        if (!m.key_bits.any()) continue;
        msgs.push_back(m);
        svids.push_back(svid);
      }
      try {
        if (auto k = merge_key_bits(msgs, anchor_.chain)) cands.push_back({*k, svids});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ConflictingKeyBits) throw;
        ++stats_.key_conflicts;
        for (const auto& m : msgs) single(m);
      }
    } else {
      for (const auto& [svid, m] : mit->second)
        if (std::all_of(m.pages_present.begin(), m.pages_present.end(), [](bool b) { return b; })) single(m);
    }
    for (auto& [key, svids] : cands) {
      if (failed_keys_.count(key.bits)) continue;
      AuthEvent ev;
      ev.gst = now_;
      ev.svids = svids;
      ev.key_sf = sf;
      ev.key_start = key_start(sf);
      AuthResult r;
      try {
        r = chain_.verify(key);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::GapTooLarge) throw;
        r.evidence.note = "gap too large";
      }
      if (r.verified()) {
        ev.kind = EventKind::KeyVerified;
        batch.keys.push_back(ev);
        break;
      }
      failed_keys_.insert(key.bits);
      ev.kind = EventKind::KeyFailed;
      ev.note = r.evidence.note;
      batch.keys.push_back(ev);
    }
  }
  key_dirty_.clear();
}

std::optional<bool> Engine::macseq_ok(uint8_t svid, int64_t sf, Batch& batch) {
  auto cached = macseq_result_.find({svid, sf});
  if (cached != macseq_result_.end()) return cached->second;
  auto mit = macks_.find(sf);
  if (mit == macks_.end() || !mit->second.count(svid)) return false;
  auto key = chain_.derive(sf + 1);
  if (!key) return std::nullopt;
  bool ok = false;
  try {
    ok = verify_macseq(mit->second.at(svid), *key, anchor_.chain, anchor_.sequence).verified();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MissingFlexInfo) throw;
  }
  macseq_result_[{svid, sf}] = ok;
  if (!ok) {
    AuthEvent ev;
    ev.kind = EventKind::MacseqFailed;
    ev.gst = now_;
    ev.svids = {svid};
    ev.key_sf = sf + 1;
    ev.data_sf = sf;
    batch.tags.push_back(ev);
  }
  return ok;
}

std::optional<NavDataBlock> Engine::eligible_view(const NavDataBlock& b, GstTime deadline,
                                                  GstTime& latest) const {
  NavDataBlock v;
  v.id = b.id;
  v.svid = b.svid;
  v.kind = b.kind;
  v.iod = b.iod;
  v.first_seen_sf = b.first_seen_sf;
  latest = GstTime{};
  for (int wt : required_words(b.kind)) {
    auto it = b.words.find(wt);
    if (it == b.words.end() || it->second.end > deadline) return std::nullopt;
    v.words.emplace(wt, it->second);
    latest = std::max(latest, it->second.end);
  }
  return v;
}

void Engine::check_forgery(const TagRecord& tag, GstTime deadline, const TeslaKey& key, Batch& batch) {
  auto it = cop_links_.find(tag.id());
  if (it == cop_links_.end()) return;
  const auto links = it->second;
  cop_links_.erase(it);
  for (const CopLink& link : links) {
    const NavDataBlock* b = store_.block(link.block_id);
    if (!b) continue;
    GstTime latest;
    auto view = eligible_view(*b, deadline, latest);
    if (!view) continue;
    if (verify_tag(tag, *view, key, anchor_.chain).verified()) continue;
    AuthEvent ev;
    ev.kind = EventKind::ForgeryDetected;
    ev.gst = now_;
    ev.svids = {tag.prn_d, tag.authenticating_svid};
    ev.tag_id = tag.id();
    ev.block_id = b->label();
    ev.prn_d = tag.prn_d;
    ev.adkd = tag.adkd;
    ev.cop = link.cop;
    ev.data_sf = tag.sf_start.subframe_index() - 1;
    ev.key_sf = key.gst_sf.subframe_index();
    for (int64_t sf : link.added_sfs) ev.links.push_back({sf, true, tag.id()});
    ev.note = "cop link not authenticated; linked block stays usable";
    if (options_.search_authentic_cop) {
      const int64_t m = tag.sf_start.subframe_index();
      for (int64_t sf = m - 1; sf <= m + 2 && !ev.authenticated_cop; ++sf) {
        for (const NavDataBlock* other : store_.candidates(tag.prn_d, b->kind, sf)) {
          if (!other->complete()) continue;
          for (int c = 1; c <= 15 && !ev.authenticated_cop; ++c) {
            TagRecord probe = tag;
            probe.cop = uint8_t(c);
            if (verify_tag(probe, *other, key, anchor_.chain).verified()) ev.authenticated_cop = c;
          }
          if (ev.authenticated_cop) break;
        }
      }
    }
    batch.data.push_back(ev);
  }
}

void Engine::try_tags(Batch& batch) {
  const int64_t floor = chain_.trusted().gst_sf.subframe_index();
  std::vector<PendingTag> keep;
  keep.reserve(pending_.size());
  for (PendingTag& p : pending_) {
    const TagRecord& t = p.tag;
    const GstTime ks = key_start(p.key_sf);
    if (p.key_sf > floor) {
      if (now_ - ks > kPendingLifetimeSeconds) {
        ++stats_.expired_tags;
        cop_links_.erase(t.id());
      } else {
        keep.push_back(std::move(p));
      }
      continue;
    }
    const GstTime deadline = ks - policy_.ts_seconds;
    if (tag_end(t) > deadline) {
      ++stats_.late_tags;
      cop_links_.erase(t.id());
      continue;
    }
    auto key = chain_.derive(p.key_sf);
    if (!key) {
      keep.push_back(std::move(p));
      continue;
    }
    const int64_t tag_sf = t.sf_start.subframe_index();
    if (t.slot_kind == SlotKind::Flex) {
      auto ok = macseq_ok(t.authenticating_svid, tag_sf, batch);
      if (!ok) {
        keep.push_back(std::move(p));
        continue;
      }
      if (!*ok) {
        cop_links_.erase(t.id());
        continue;
      }
    }

    const int64_t data_sf = tag_sf - 1;
    const BlockKind kind = block_kind_for_adkd(t.adkd);
    bool any_complete = false;
    bool verified = false;
    const NavDataBlock* used = nullptr;
    GstTime latest;
    for (const NavDataBlock* b : store_.candidates(t.prn_d, kind, data_sf)) {
      GstTime lb;
      auto view = eligible_view(*b, deadline, lb);
      if (!view) continue;
      any_complete = true;
      if (verify_tag(t, *view, *key, anchor_.chain).verified()) {
        verified = true;
        used = b;
        latest = lb;
        break;
      }
    }

    if (!verified && !any_complete) {
      if (now_ - ks > kPendingLifetimeSeconds) {
        ++stats_.expired_tags;
        cop_links_.erase(t.id());
      } else {
        keep.push_back(std::move(p));
      }
      continue;
    }

    AuthEvent ev;
    ev.kind = verified ? EventKind::TagVerified : EventKind::TagFailed;
    ev.gst = now_;
    ev.svids = {t.authenticating_svid};
    ev.tag_id = t.id();
    ev.prn_d = t.prn_d;
    ev.adkd = t.adkd;
    ev.cop = t.cop;
    ev.data_sf = data_sf;
    ev.key_sf = p.key_sf;
    ev.key_start = ks;
    if (verified) {
      ev.block_id = used->label();
      ev.latest_bit = std::max(latest, tag_end(t));
      const Applicability& a = used->applicable_sfs.at(data_sf);
      ev.links.push_back({data_sf, a.reason == LinkReason::Cop, a.via_tag});
    }
    batch.tags.push_back(ev);

    if (verified && authenticated_blocks_.insert(used->id).second) {
      AuthEvent d;
      d.kind = EventKind::DataAuthenticated;
      d.gst = now_;
      d.svids = {t.prn_d};
      d.block_id = used->label();
      d.adkd = t.adkd;
      d.data_sf = data_sf;
      d.tag_id = t.id();
      batch.data.push_back(d);
    }
    if (verified) {
      if (t.adkd == 0) auth_.ephemeris.insert(t.prn_d);
      if (t.adkd == 4) auth_.timing.insert(t.prn_d);
    }
    check_forgery(t, deadline, *key, batch);
  }
  pending_ = std::move(keep);
}

std::vector<AuthEvent> Engine::finish(Batch& batch) {
  auto tag_order = [](const AuthEvent& a, const AuthEvent& b) {
    auto key = [](const AuthEvent& e) {
      return std::make_tuple(e.svids.empty() ? 0 : e.svids.front(), e.data_sf.value_or(0), e.tag_id);
    };
    return key(a) < key(b);
  };
  std::stable_sort(batch.tags.begin(), batch.tags.end(), tag_order);
  if (!fix_time_ && detect_fix(auth_, options_.fix_rule)) {
    fix_time_ = now_;
    AuthEvent f;
    f.kind = EventKind::FixAuthenticated;
    f.gst = now_;
    f.svids.assign(auth_.ephemeris.begin(), auth_.ephemeris.end());
    f.ttfaf_seconds = ttfaf_seconds();
    batch.data.push_back(f);
  }
  std::vector<AuthEvent> out;
  out.reserve(batch.keys.size() + batch.tags.size() + batch.data.size());
  for (auto* v : {&batch.keys, &batch.tags, &batch.data})
    for (auto& e : *v) out.push_back(std::move(e));
  log_.insert(log_.end(), out.begin(), out.end());
  return out;
}

}  // namespace osnma
