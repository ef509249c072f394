#pragma once

#include <functional>
#include <string>
#include <vector>

#include "osnma/engine.hpp"
#include "osnma/scenario.hpp"
#include "osnma/sweep.hpp"

namespace testing_support {

// Generated once per (preset, seed) and kept for the whole test binary.
const osnma::ScenarioOutput& scenario(const std::string& preset, uint64_t seed = 1);

std::vector<osnma::PageRecord> without(const std::vector<osnma::PageRecord>& recs,
                                       const std::function<bool(const osnma::PageRecord&)>& drop);

// Full engine replay from `origin` (all records when unset).
osnma::Engine replay(const osnma::ScenarioOutput& out, const osnma::TimeSyncPolicy& policy,
                     std::optional<osnma::GstTime> origin = std::nullopt,
                     osnma::FixRule rule = osnma::FixRule::ephemeris_only());

std::vector<uint8_t> random_bytes(uint64_t& state, size_t n);

}  // namespace testing_support
