#include "osnma/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>
#include <thread>

#include "osnma/error.hpp"

namespace osnma {

Metrics metrics(std::span<const int64_t> values) {
  if (values.empty()) throw Error(ErrorCode::NoFixes, "no fixes to summarize");
  std::vector<int64_t> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  Metrics m;
  m.count = v.size();
  m.lowest = double(v.front());
  m.average = double(std::accumulate(v.begin(), v.end(), int64_t{0})) / double(v.size());
  const size_t rank = (95 * v.size() + 99) / 100;  // ceil(0.95 n)
  m.p95 = double(v[std::max<size_t>(rank, 1) - 1]);
  return m;
}

Metrics metrics(const SweepResult& s) {
  std::vector<int64_t> v;
  for (const auto& p : s.points)
    if (p.ttfaf_s) v.push_back(*p.ttfaf_s);
  return metrics(v);
}

std::optional<int64_t> run_from(std::span<const PreparedPage> pages, const HotStart& anchor,
                                const TimeSyncPolicy& policy, GstTime origin, const FixRule& rule) {
  EngineOptions eo;
  eo.fix_rule = rule;
  eo.origin = origin;
  Engine engine(anchor, policy, eo);
  auto it = std::lower_bound(pages.begin(), pages.end(), origin,
                             [](const PreparedPage& p, GstTime t) { return p.record.gst < t; });
  for (; it != pages.end(); ++it) {
    engine.process(*it);
    if (engine.has_fix()) break;
  }
  return engine.ttfaf_seconds();
}

SweepResult sweep(std::span<const PreparedPage> pages, const HotStart& anchor, const TimeSyncPolicy& policy,
                  const SweepOptions& options) {
  policy.validate();
  if (pages.empty()) throw Error(ErrorCode::StreamTooShort, "empty stream");
  const GstTime first = pages.front().record.gst;
  const GstTime end = pages.back().record.gst + GstTime::kPageSeconds;
  if (end - first < 3 * GstTime::kSubframeSeconds)
    throw Error(ErrorCode::StreamTooShort, "stream spans less than three sub-frames");
  if (options.step < 1) throw Error(ErrorCode::ConfigInvalid, "step must be >= 1");

  SweepResult res;
  res.policy = policy.name;
  res.ts_seconds = policy.ts_seconds;
  res.step = options.step;
  res.start = options.start.value_or(first.is_subframe_start() ? first : first.subframe_start() + 30);
  int64_t count = options.count;
  if (count <= 0) count = std::max<int64_t>(1, (end - res.start - 3 * GstTime::kSubframeSeconds) / options.step + 1);
  res.points.resize(size_t(count));

  auto job = [&](size_t i) {
    const int64_t off = int64_t(i) * options.step;
    res.points[i] = {off, run_from(pages, anchor, policy, res.start + off, options.fix_rule)};
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, unsigned(count)));
  if (threads == 1) {
    for (size_t i = 0; i < res.points.size(); ++i) job(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (size_t i = t; i < res.points.size(); i += threads) job(i);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<int64_t> fixes;
  for (const auto& p : res.points) {
    const int64_t sf = (res.start + p.offset_s).subframe_index() - res.start.subframe_index();
    if (res.min_per_subframe.empty() || res.min_per_subframe.back().subframe != sf)
      res.min_per_subframe.push_back({sf, std::nullopt});
    auto& m = res.min_per_subframe.back().min_ttfaf_s;
    if (p.ttfaf_s) {
      fixes.push_back(*p.ttfaf_s);
      m = m ? std::min(*m, *p.ttfaf_s) : *p.ttfaf_s;
    } else {
      ++res.no_fix;
    }
  }
  if (!fixes.empty()) res.metrics = metrics(fixes);
  return res;
}

SweepResult sweep(std::span<const PageRecord> records, const HotStart& anchor, const TimeSyncPolicy& policy,
                  const SweepOptions& options) {
  std::vector<PreparedPage> pages;
  pages.reserve(records.size());
  for (const auto& r : records) pages.push_back(prepare_page(r));
  return sweep(std::span<const PreparedPage>(pages), anchor, policy, options);
}

std::string SweepResult::to_json() const {
  using J = nlohmann::ordered_json;
  J j;
  j["policy"] = policy;
  j["ts_seconds"] = ts_seconds;
  j["start"] = {{"wn", start.wn}, {"tow", start.tow}};
  j["step"] = step;
  J pts = J::array();
  for (const auto& p : points) pts.push_back({{"offset_s", p.offset_s}, {"ttfaf_s", p.ttfaf_s ? J(*p.ttfaf_s) : J(nullptr)}});
  j["points"] = pts;
  J mins = J::array();
  for (const auto& m : min_per_subframe)
    mins.push_back({{"subframe", m.subframe}, {"min_ttfaf_s", m.min_ttfaf_s ? J(*m.min_ttfaf_s) : J(nullptr)}});
  j["min_per_subframe"] = mins;
  j["no_fix"] = no_fix;
  if (metrics)
    j["metrics"] = {{"lowest", metrics->lowest}, {"average", metrics->average}, {"p95", metrics->p95},
                    {"count", metrics->count}};
  else
    j["metrics"] = nullptr;
  return j.dump(2);
}

SweepResult SweepResult::from_json(const std::string& text) {
  SweepResult r;
  try {
    auto j = nlohmann::json::parse(text);
    r.policy = j.at("policy").get<std::string>();
    r.ts_seconds = j.at("ts_seconds").get<int>();
    r.start = GstTime{j.at("start").at("wn").get<uint32_t>(), j.at("start").at("tow").get<uint32_t>()};
    r.step = j.at("step").get<int64_t>();
    for (const auto& p : j.at("points")) {
      SweepPoint sp;
      sp.offset_s = p.at("offset_s").get<int64_t>();
      if (!p.at("ttfaf_s").is_null()) sp.ttfaf_s = p.at("ttfaf_s").get<int64_t>();
      r.points.push_back(sp);
    }
    for (const auto& m : j.at("min_per_subframe")) {
      SubframeMinimum sm;
      sm.subframe = m.at("subframe").get<int64_t>();
      if (!m.at("min_ttfaf_s").is_null()) sm.min_ttfaf_s = m.at("min_ttfaf_s").get<int64_t>();
      r.min_per_subframe.push_back(sm);
    }
    r.no_fix = j.at("no_fix").get<size_t>();
    if (!j.at("metrics").is_null()) {
      const auto& m = j["metrics"];
      r.metrics = Metrics{m.at("lowest").get<double>(), m.at("average").get<double>(), m.at("p95").get<double>(),
                          m.at("count").get<size_t>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return r;
}

}  // namespace osnma
