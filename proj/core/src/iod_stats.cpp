#include "osnma/iod_stats.hpp"

#include <set>

namespace osnma {

IodSuccess iod_success_rate(std::span<const IodObservation> observations, int min_sats) {
  std::map<std::pair<uint8_t, int64_t>, uint16_t> seen;
  for (const auto& o : observations) seen.try_emplace({o.svid, o.sf}, o.iod);

  IodSuccess out;
  std::map<int64_t, int> matched;
  std::set<int64_t> epochs;
  for (const auto& [key, iod] : seen) {
    auto prev = seen.find({key.first, key.second - 1});
    if (prev == seen.end()) continue;
    Rate& r = out.per_satellite[key.first];
    ++r.epochs;
    ++out.satellite.epochs;
    epochs.insert(key.second);
    if (prev->second == iod) {
      ++r.successes;
      ++out.satellite.successes;
      ++matched[key.second];
    }
  }
  for (int64_t sf : epochs) {
    ++out.receiver.epochs;
    auto m = matched.find(sf);
    if (m != matched.end() && m->second >= min_sats) ++out.receiver.successes;
  }
  return out;
}

}  // namespace osnma
