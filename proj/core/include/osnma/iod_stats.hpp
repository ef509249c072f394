#pragma once

#include <map>
#include <span>

#include "osnma/nav_store.hpp"

namespace osnma {

struct Rate {
  int64_t epochs = 0;
  int64_t successes = 0;
  double percent() const { return epochs ? 100.0 * double(successes) / double(epochs) : 0.0; }
};

struct IodSuccess {
  std::map<uint8_t, Rate> per_satellite;
  Rate satellite;  // pooled over all satellites
  Rate receiver;   // epochs where >= min_sats satellites matched
};

// A satellite epoch is a sub-frame whose IOD and the previous sub-frame's IOD
// were both observed; it succeeds when they are equal.
IodSuccess iod_success_rate(std::span<const IodObservation> observations, int min_sats = 4);

}  // namespace osnma
