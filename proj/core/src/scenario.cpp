#include "osnma/scenario.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <random>
#include <set>

#include "osnma/crypto.hpp"
#include "osnma/error.hpp"

namespace osnma {
namespace {

int64_t floor_div(int64_t a, int64_t b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

Digest256 derive(std::string_view label, std::initializer_list<int64_t> parts) {
  std::vector<uint8_t> m(label.begin(), label.end());
  for (int64_t v : parts)
    for (int s = 56; s >= 0; s -= 8) m.push_back(uint8_t(uint64_t(v) >> s));
  return sha256(m);
}

double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1p-53; }

}  // namespace

LossModel LossModel::bernoulli(double p) {
  LossModel m;
  m.kind = Kind::Bernoulli;
  m.p = p;
  return m;
}

LossModel LossModel::gilbert_elliott(double p_good_bad, double p_bad_good, double loss_good, double loss_bad) {
  LossModel m;
  m.kind = Kind::GilbertElliott;
  m.p_good_bad = p_good_bad;
  m.p_bad_good = p_bad_good;
  m.loss_good = loss_good;
  m.loss_bad = loss_bad;
  return m;
}

double LossModel::stationary_loss() const {
  switch (kind) {
    case Kind::None: return 0.0;
    case Kind::Bernoulli: return p;
    case Kind::GilbertElliott: {
      const double denom = p_good_bad + p_bad_good;
      const double pi_bad = denom > 0 ? p_good_bad / denom : 0.0;
      return pi_bad * loss_bad + (1 - pi_bad) * loss_good;
    }
  }
  return 0.0;
}

void LossModel::validate() const {
  for (double v : {p, p_good_bad, p_bad_good, loss_good, loss_bad})
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::ConfigInvalid, "loss probability outside [0,1]");
}

WtSchedule default_wt_schedule() {
  return {{{2, 4, 6, 7, 8, 0, 0, 0, 0, 0, 1, 3, 5, 0, 0},
           {2, 4, 6, 9, 10, 0, 0, 0, 0, 0, 1, 3, 5, 0, 0}}};
}

void ScenarioConfig::validate() const {
  if (satellites.empty()) throw Error(ErrorCode::ConfigInvalid, "no satellites");
  if (!start.is_subframe_start()) throw Error(ErrorCode::ConfigInvalid, "start must be sub-frame aligned");
  if (duration_s <= 0) throw Error(ErrorCode::ConfigInvalid, "duration must be positive");
  if (iod_change_period_sf < 0) throw Error(ErrorCode::ConfigInvalid, "negative IOD period");
  std::set<uint8_t> ids;
  for (const auto& s : satellites) {
    if (s.svid < 1 || s.svid > 36) throw Error(ErrorCode::ConfigInvalid, "svid outside 1..36");
    if (!ids.insert(s.svid).second) throw Error(ErrorCode::ConfigInvalid, "duplicate svid");
    s.loss.validate();
    for (const auto& iv : s.visible)
      if (iv.to_s < iv.from_s) throw Error(ErrorCode::ConfigInvalid, "bad visibility interval");
  }
  for (uint8_t r : cross_auth_ranking)
    if (!ids.count(r)) throw Error(ErrorCode::ConfigInvalid, "ranking names unknown svid");
  for (const auto& sched : wt_schedule)
    for (int wt : sched)
      if (wt < 0 || wt > 63) throw Error(ErrorCode::ConfigInvalid, "word type outside 0..63");
  chain.validate();
  tag_sequence.validate(chain);
  if (adversary.kind == Adversary::Kind::CopForge && adversary.at_sf < 1)
    throw Error(ErrorCode::ConfigInvalid, "cop_forge needs at_sf >= 1");
}

std::array<uint32_t, kPagesPerSubframe> sign_subframe(const ChainConfig& cfg, const TagSequence& seq,
                                                      uint8_t emitter, GstTime sf,
                                                      std::span<const TagPlan> plan,
                                                      std::span<const uint8_t> disclosed_key,
                                                      std::span<const uint8_t> tag_key,
                                                      std::span<const uint8_t> adkd12_key) {
  const auto& kinds = seq.for_parity(sf.parity());
  if (plan.size() != kinds.size()) throw Error(ErrorCode::ConfigInvalid, "plan size");
  TeslaKey k0{{tag_key.begin(), tag_key.end()}, sf + GstTime::kSubframeSeconds, 0};
  TeslaKey k12{{adkd12_key.begin(), adkd12_key.end()}, sf + 11 * GstTime::kSubframeSeconds, 0};
  MackContent mc;
  std::vector<TagInfo> flex;
  for (size_t s = 0; s < plan.size(); ++s) {
    const TagPlan& p = plan[s];
    TagRecord t;
    t.prn_d = p.prn_d;
    t.adkd = p.adkd;
    t.cop = p.cop;
    t.slot = int(s);
    t.authenticating_svid = emitter;
    t.sf_start = sf;
    t.slot_kind = kinds[s];
    if (s == 0) t.prn_d = emitter;
    if (!t.dummy()) t.tag_value = compute_tag(p.adkd == 12 ? k12 : k0, tag_message(t, p.payload), cfg);
    if (kinds[s] == SlotKind::Flex) flex.push_back(t.info());
    mc.tags.push_back(t);
  }
  mc.macseq = compute_macseq(k0, emitter, sf, flex, cfg);
  mc.key.assign(disclosed_key.begin(), disclosed_key.end());
  return encode_mack(mc, cfg);
}

Scenario::Scenario(ScenarioConfig cfg) : cfg_(std::move(cfg)) {
  const Digest256 a = derive("alpha", {int64_t(cfg_.seed)});
  std::copy(a.begin(), a.begin() + 6, cfg_.chain.alpha.begin());
  cfg_.validate();
  std::sort(cfg_.satellites.begin(), cfg_.satellites.end(),
            [](const auto& x, const auto& y) { return x.svid < y.svid; });

  const int64_t first = start_sf() - 1;
  const int64_t last = start_sf() + subframe_count() + 12;
  const Digest256 top = derive("chain-top", {int64_t(cfg_.seed)});
  std::vector<uint8_t> k(top.begin(), top.begin() + cfg_.chain.key_bytes());
  keys_[last] = k;
  for (int64_t sf = last - 1; sf >= first; --sf) {
    k = chain_step(k, GstTime::from_subframe_index(sf), cfg_.chain);
    keys_[sf] = k;
  }
}

int64_t Scenario::subframe_count() const {
  return (cfg_.duration_s + GstTime::kSubframeSeconds - 1) / GstTime::kSubframeSeconds;
}

const SatelliteConfig& Scenario::sat(uint8_t svid) const {
  for (const auto& s : cfg_.satellites)
    if (s.svid == svid) return s;
  throw Error(ErrorCode::ConfigInvalid, "unknown svid " + std::to_string(svid));
}

bool Scenario::connected_at(uint8_t svid, int64_t sf) const {
  const auto& s = sat(svid);
  const int64_t rel = sf - start_sf();
  if (s.connected) return !(s.disconnect_at_sf && rel >= *s.disconnect_at_sf);
  return s.connect_at_sf && rel >= *s.connect_at_sf && !(s.disconnect_at_sf && rel >= *s.disconnect_at_sf);
}

int64_t Scenario::batch(uint8_t svid, int64_t sf) const {
  if (cfg_.iod_change_period_sf == 0) return 0;
  return floor_div(sf + sat(svid).iod_phase, cfg_.iod_change_period_sf);
}

int64_t Scenario::batch_start(uint8_t svid, int64_t sf) const {
  if (cfg_.iod_change_period_sf == 0) return INT64_MIN / 2;
  return batch(svid, sf) * cfg_.iod_change_period_sf - sat(svid).iod_phase;
}

uint16_t Scenario::iod(uint8_t svid, int64_t sf) const {
  return uint16_t(uint64_t(svid * 37 + batch(svid, sf) * 11) & 1023u);
}

int Scenario::cop(uint8_t svid, int64_t data_sf, int adkd) const {
  if (adkd == 4 || cfg_.iod_change_period_sf == 0) return 15;
  return int(std::min<int64_t>(15, data_sf - batch_start(svid, data_sf) + 1));
}

WordPayload Scenario::word(uint8_t svid, int64_t sf, int wt) const {
  const int64_t seed = int64_t(cfg_.seed);
  Digest256 d;
  if (wt >= 1 && wt <= 5)
    d = derive("eph", {seed, svid, batch(svid, sf), wt});
  else if (wt == 6 || wt == 10)
    d = derive("time", {seed, svid, wt});
  else
    d = derive("fill", {seed, svid, sf, wt});
  WordPayload w{};
  std::copy(d.begin(), d.begin() + w.size(), w.begin());
  write_bits(w, 0, 6, uint64_t(wt));
  if (word_has_iod(wt)) write_bits(w, 6, 10, iod(svid, sf));
  return w;
}

const std::vector<uint8_t>& Scenario::key(int64_t sf) const {
  auto it = keys_.find(sf);
  if (it == keys_.end()) throw Error(ErrorCode::ConfigInvalid, "no chain key for sub-frame");
  return it->second;
}

HotStart Scenario::hotstart() const {
  HotStart hs;
  hs.chain = cfg_.chain;
  hs.sequence = cfg_.tag_sequence;
  hs.root.gst_sf = GstTime::from_subframe_index(start_sf() - 1);
  hs.root.bits = key(start_sf() - 1);
  return hs;
}

std::vector<uint8_t> Scenario::candidates(uint8_t emitter, int64_t sf) const {
  std::vector<uint8_t> out;
  auto explicit_rank = cfg_.ranking_by_sf.find(sf - start_sf());
  if (explicit_rank != cfg_.ranking_by_sf.end()) {
    for (uint8_t s : explicit_rank->second)
      if (s != emitter) out.push_back(s);
    return out;
  }
  std::vector<uint8_t> base = cfg_.cross_auth_ranking;
  if (base.empty())
    for (const auto& s : cfg_.satellites) base.push_back(s.svid);
  for (uint8_t s : base) {
    if (s == emitter) continue;
    if (cfg_.cross_auth_connected || !connected_at(s, sf - 1)) out.push_back(s);
  }
  if (cfg_.rotate_ranking && !out.empty()) {
    size_t idx = 0;
    for (const auto& s : cfg_.satellites) {
      if (s.svid == emitter) break;
      if (connected_at(s.svid, sf)) ++idx;
    }
    std::rotate(out.begin(), out.begin() + long(idx % out.size()), out.end());
  }
  return out;
}

std::vector<TagPlan> Scenario::plan_tags(uint8_t emitter, int64_t sf) const {
  const auto& kinds = cfg_.tag_sequence.for_parity(int(sf % 2));
  const auto cand = candidates(emitter, sf);
  auto eph = [&](uint8_t svid) {
    std::vector<WordPayload> v;
    for (int wt = 1; wt <= 5; ++wt) v.push_back(word(svid, sf - 1, wt));
    return v;
  };
  auto plan_for = [&](uint8_t target, int adkd, SlotKind kind) {
    TagPlan p;
    p.kind = kind;
    p.adkd = uint8_t(adkd);
    if (target == kDummyPrn) return p;
    p.prn_d = target;
    p.cop = uint8_t(cop(target, sf - 1, adkd));
    if (adkd == 4)
      p.payload = {word(target, sf - 1, 6), word(target, sf - 1, 10)};
    else
      p.payload = eph(target);
    return p;
  };
  std::vector<TagPlan> plan;
  int cross = 0;
  for (SlotKind k : kinds) {
    switch (k) {
      case SlotKind::SelfAdkd0: plan.push_back(plan_for(emitter, 0, k)); break;
      case SlotKind::SelfAdkd4: plan.push_back(plan_for(emitter, 4, k)); break;
      case SlotKind::SelfAdkd12: plan.push_back(plan_for(emitter, 12, k)); break;
      case SlotKind::CrossAdkd12:
        plan.push_back(plan_for(cand.empty() ? kDummyPrn : cand[0], 12, k));
        break;
      case SlotKind::CrossAdkd0:
      case SlotKind::Flex: {
        size_t rank = size_t(cross);
        if (cross >= 2) rank = (sf % 2 == 0 || cand.size() < 4) ? 2 : 3;
        ++cross;
        plan.push_back(plan_for(rank < cand.size() ? cand[rank] : kDummyPrn, 0, k));
        break;
      }
    }
  }
  return plan;
}

ScenarioOutput Scenario::generate() const {
  ScenarioOutput out;
  out.hotstart = hotstart();
  const ChainConfig& cc = cfg_.chain;
  const int64_t n_sf = subframe_count();

  for (const auto& [sf, k] : keys_) out.truth.keys[sf] = k;
  for (const auto& s : cfg_.satellites)
    for (int64_t sf = start_sf() - 1; sf < start_sf() + n_sf; ++sf) {
      out.truth.iod[s.svid][sf] = iod(s.svid, sf);
      if (connected_at(s.svid, sf) && sf >= start_sf()) out.truth.connected_sfs[s.svid].push_back(sf);
    }

  std::map<uint8_t, std::mt19937_64> rngs;
  std::map<uint8_t, bool> bad;
  for (const auto& s : cfg_.satellites) {
    rngs.emplace(s.svid, std::mt19937_64(cfg_.seed * 0x9E3779B97F4A7C15ull ^ s.svid));
    bad[s.svid] = false;
  }

  for (int64_t r = 0; r < n_sf; ++r) {
    const int64_t sf = start_sf() + r;
    const GstTime sf_start = GstTime::from_subframe_index(sf);
    std::map<uint8_t, std::array<uint32_t, kPagesPerSubframe>> mack;
    for (const auto& s : cfg_.satellites) {
      if (!connected_at(s.svid, sf)) continue;
      const auto plan = plan_tags(s.svid, sf);
      mack[s.svid] = sign_subframe(cc, cfg_.tag_sequence, s.svid, sf_start, plan, key(sf), key(sf + 1),
                                   key(sf + 11));
      for (size_t i = 0; i < plan.size(); ++i) {
        TruthTag t{sf, s.svid, int(i), plan[i].kind, i == 0 ? s.svid : plan[i].prn_d, plan[i].adkd,
                   plan[i].cop, false};
        if (t.prn_d != kDummyPrn) t.target_connected = connected_at(t.prn_d, sf);
        out.truth.tags.push_back(t);
      }
    }
    for (int p = 0; p < kPagesPerSubframe; ++p) {
      const GstTime gst = sf_start + 2 * p;
      const int64_t rel = gst - cfg_.start;
      if (rel >= cfg_.duration_s) break;
      for (const auto& s : cfg_.satellites) {
        auto& rng = rngs.at(s.svid);
        bool lost = false;
        switch (s.loss.kind) {
          case LossModel::Kind::None: break;
          case LossModel::Kind::Bernoulli: lost = uniform01(rng) < s.loss.p; break;
          case LossModel::Kind::GilbertElliott: {
            bool& b = bad[s.svid];
            const double u = uniform01(rng);
            b = b ? !(u < s.loss.p_bad_good) : u < s.loss.p_good_bad;
            lost = uniform01(rng) < (b ? s.loss.loss_bad : s.loss.loss_good);
            break;
          }
        }
        bool visible = s.visible.empty();
        for (const auto& iv : s.visible)
          if (rel >= iv.from_s && rel < iv.to_s) visible = true;
        if (!visible) continue;
        if (lost) {
          out.truth.lost_pages.emplace_back(s.svid, gst);
          continue;
        }
        OsnmaField f{};
        if (auto m = mack.find(s.svid); m != mack.end()) {
          f[0] = p == 0 ? 0x52 : uint8_t(0x10 + p);
          const uint32_t c = m->second[size_t(p)];
          f[1] = uint8_t(c >> 24);
          f[2] = uint8_t(c >> 16);
          f[3] = uint8_t(c >> 8);
          f[4] = uint8_t(c);
        }
        const int wt = cfg_.wt_schedule[size_t(sf % 2)][size_t(p)];
        out.records.push_back({gst, s.svid, emit_page(word(s.svid, sf, wt), f)});
      }
    }
  }
  if (cfg_.adversary.kind != Adversary::Kind::None) apply_adversary(out, cfg_.adversary);
  return out;
}

void Scenario::apply_adversary(ScenarioOutput& out, const Adversary& adv) const {
  if (adv.kind == Adversary::Kind::None) return;
  const int64_t c = start_sf() + adv.at_sf;
  std::set<uint8_t> affected;
  if (cfg_.iod_change_period_sf > 0)
    for (const auto& s : cfg_.satellites)
      if (batch(s.svid, c) != batch(s.svid, c - 1)) affected.insert(s.svid);
  if (affected.empty())
    throw Error(ErrorCode::AdversaryInapplicable, "no IOD change at sub-frame " + std::to_string(adv.at_sf));

  const ChainConfig& cc = cfg_.chain;
  const int eb = cc.entry_bits();
  for (PageRecord& rec : out.records) {
    const int64_t sf = rec.gst.subframe_index();
    if (sf != c && sf != c + 1) continue;
    bool touched = false;
    // Old batch replayed in c only; c+1 carries the real new data.
    if (sf == c && affected.count(rec.svid)) {
      const int wt = cfg_.wt_schedule[size_t(sf % 2)][size_t(rec.gst.page_slot())];
      if (wt >= 1 && wt <= 5) {
        const WordPayload old = word(rec.svid, c - 1, wt);
        copy_bits(old, 0, rec.page, layout::kData1, layout::kData1Bits);
        copy_bits(old, layout::kData1Bits, rec.page, layout::kData2, layout::kData2Bits);
        touched = true;
      }
    }
    // Raise the COP of tags in c+1 that cover affected satellites.
    if (sf == c + 1 && connected_at(rec.svid, sf)) {
      const auto plan = plan_tags(rec.svid, sf);
      const int page = rec.gst.page_slot();
      for (size_t s = 0; s < plan.size(); ++s) {
        const uint8_t target = s == 0 ? rec.svid : plan[s].prn_d;
        if (!affected.count(target) || (plan[s].adkd != 0 && plan[s].adkd != 12)) continue;
        const int forged = int(std::min<int64_t>(15, c - batch_start(target, c - 1) + 1));
        const int cop_bit = int(s) * eb + eb - 4;
        for (int i = 0; i < 4; ++i) {
          const int bit = cop_bit + i;
          if (bit / 32 != page) continue;
          write_bit(rec.page, layout::kOsnma + 8 + size_t(bit % 32), (forged >> (3 - i)) & 1);
          touched = true;
        }
      }
    }
    if (touched) reseal_page(rec.page);
  }
  out.truth.adversary_note = "cop_forge at relative sub-frame " + std::to_string(adv.at_sf) + " affecting " +
                             std::to_string(affected.size()) + " satellites";
}

std::vector<TagCounts> count_tags(const GroundTruth& truth) {
  std::map<int64_t, TagCounts> m;
  for (const auto& t : truth.tags) {
    auto& c = m[t.sf];
    c.sf = t.sf;
    if (t.prn_d == kDummyPrn || t.adkd != 0) continue;
    (t.target_connected ? c.for_connected : c.for_disconnected)++;
  }
  std::vector<TagCounts> out;
  for (const auto& [sf, c] : m) out.push_back(c);
  return out;
}

std::string GroundTruth::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json k = nlohmann::ordered_json::object();
  for (const auto& [sf, key] : keys) k[std::to_string(sf)] = to_hex(key);
  j["keys"] = k;
  nlohmann::ordered_json tags_j = nlohmann::ordered_json::array();
  for (const auto& t : tags)
    tags_j.push_back({{"sf", t.sf}, {"emitter", t.emitter}, {"slot", t.slot}, {"kind", slot_label(t.kind)},
                      {"prn_d", t.prn_d}, {"adkd", t.adkd}, {"cop", t.cop}, {"target_connected", t.target_connected}});
  j["tags"] = tags_j;
  nlohmann::ordered_json iod_j = nlohmann::ordered_json::object();
  for (const auto& [svid, m] : iod) {
    nlohmann::ordered_json per = nlohmann::ordered_json::object();
    for (const auto& [sf, v] : m) per[std::to_string(sf)] = v;
    iod_j[std::to_string(svid)] = per;
  }
  j["iod"] = iod_j;
  nlohmann::ordered_json conn = nlohmann::ordered_json::object();
  for (const auto& [svid, sfs] : connected_sfs) conn[std::to_string(svid)] = sfs;
  j["connected_sfs"] = conn;
  nlohmann::ordered_json lost = nlohmann::ordered_json::array();
  for (const auto& [svid, g] : lost_pages) lost.push_back({{"svid", svid}, {"wn", g.wn}, {"tow", g.tow}});
  j["lost_pages"] = lost;
  if (!adversary_note.empty()) j["adversary"] = adversary_note;
  return j.dump();
}

}  // namespace osnma
