#include "fixtures.hpp"

#include <map>
#include <mutex>

namespace testing_support {

const osnma::ScenarioOutput& scenario(const std::string& preset, uint64_t seed) {
  static std::map<std::pair<std::string, uint64_t>, osnma::ScenarioOutput> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto key = std::make_pair(preset, seed);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, osnma::Scenario(osnma::preset(preset, seed)).generate()).first;
  return it->second;
}

std::vector<osnma::PageRecord> without(const std::vector<osnma::PageRecord>& recs,
                                       const std::function<bool(const osnma::PageRecord&)>& drop) {
  std::vector<osnma::PageRecord> out;
  for (const auto& r : recs)
    if (!drop(r)) out.push_back(r);
  return out;
}

osnma::Engine replay(const osnma::ScenarioOutput& out, const osnma::TimeSyncPolicy& policy,
                     std::optional<osnma::GstTime> origin, osnma::FixRule rule) {
  osnma::EngineOptions eo;
  eo.fix_rule = rule;
  eo.origin = origin;
  osnma::Engine engine(out.hotstart, policy, eo);
  for (const auto& r : out.records)
    if (!origin || r.gst >= *origin) engine.process_page(r);
  return engine;
}

// splitmix64
std::vector<uint8_t> random_bytes(uint64_t& state, size_t n) {
  std::vector<uint8_t> v(n);
  for (auto& b : v) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    b = uint8_t(z ^ (z >> 31));
  }
  return v;
}

}  // namespace testing_support
