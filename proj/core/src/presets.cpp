#include "osnma/error.hpp"
#include "osnma/scenario.hpp"

namespace osnma {
namespace {

// IOD phase that puts a data change at relative sub-frame rel.
int phase_for_change_at(const ScenarioConfig& c, int64_t rel) {
  const int64_t p = c.iod_change_period_sf;
  const int64_t abs = c.start.subframe_index() + rel;
  return int(((-abs) % p + p) % p);
}

SatelliteConfig sat(uint8_t svid, bool connected, LossModel loss = LossModel::none()) {
  SatelliteConfig s;
  s.svid = svid;
  s.connected = connected;
  s.loss = loss;
  return s;
}

ScenarioConfig ideal(const char* name, uint64_t seed, bool theoretical) {
  ScenarioConfig c;
  c.name = name;
  c.seed = seed;
  c.duration_s = 300;
  c.iod_change_period_sf = 0;
  c.cross_auth_connected = theoretical;
  for (uint8_t s : {2, 4, 10, 27}) c.satellites.push_back(sat(s, true));
  return c;
}

void stagger(ScenarioConfig& c, int spread) {
  for (size_t i = 0; i < c.satellites.size(); ++i)
    c.satellites[i].iod_phase = phase_for_change_at(c, int64_t(1 + spread * i) % c.iod_change_period_sf);
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"ideal_4conn", "ideal_4conn_ops", "open_sky_4c4d", "open_sky", "soft_urban",
          "hard_urban", "iod_24h", "cop_forge", "cop_honest"};
}

ScenarioConfig preset(const std::string& name, uint64_t seed) {
  if (name == "ideal_4conn") return ideal("ideal_4conn", seed, true);
  if (name == "ideal_4conn_ops") return ideal("ideal_4conn_ops", seed, false);
  if (name == "open_sky_4c4d") {
    ScenarioConfig c = ideal("open_sky_4c4d", seed, false);
    c.duration_s = 25 * 30;
    for (uint8_t s : {5, 12, 19, 33}) c.satellites.push_back(sat(s, false));
    return c;
  }
  if (name == "open_sky") {
    ScenarioConfig c;
    c.name = name;
    c.seed = seed;
    c.duration_s = 600;
    for (uint8_t s : {2, 4, 10, 11, 27, 30}) c.satellites.push_back(sat(s, true, LossModel::bernoulli(0.01)));
    for (uint8_t s : {5, 19}) c.satellites.push_back(sat(s, false, LossModel::bernoulli(0.01)));
    stagger(c, 3);
    return c;
  }
  if (name == "soft_urban") {
    ScenarioConfig c;
    c.name = name;
    c.seed = seed;
    c.duration_s = 600;
    const auto ge = LossModel::gilbert_elliott(0.03, 0.25, 0.01, 0.8);
    for (uint8_t s : {2, 4, 10, 11, 24, 27, 30}) c.satellites.push_back(sat(s, true, ge));
    for (uint8_t s : {5, 19}) c.satellites.push_back(sat(s, false, ge));
    stagger(c, 2);
    return c;
  }
  if (name == "hard_urban") {
    ScenarioConfig c;
    c.name = name;
    c.seed = seed;
    c.duration_s = 900;
    const auto ge = LossModel::gilbert_elliott(0.08, 0.15, 0.05, 0.9);
    for (uint8_t s : {2, 4, 10, 11, 27, 30}) c.satellites.push_back(sat(s, true, ge));
    c.satellites.push_back(sat(19, false, ge));
    auto joining = sat(5, false, ge);
    joining.connect_at_sf = c.duration_s / 30 / 2;
    c.satellites.push_back(joining);
    // Buildings block two satellites for a while.
    c.satellites[1].visible = {{0, 240}, {420, c.duration_s}};
    c.satellites[4].visible = {{0, 510}, {690, c.duration_s}};
    stagger(c, 3);
    return c;
  }
  if (name == "iod_24h") {
    ScenarioConfig c;
    c.name = name;
    c.seed = seed;
    c.duration_s = 2881 * 30;
    for (uint8_t s : {1, 3, 7, 8, 13, 21, 25, 26, 34}) c.satellites.push_back(sat(s, false));
    stagger(c, 2);
    return c;
  }
  if (name == "cop_forge" || name == "cop_honest") {
    ScenarioConfig c = ideal(name == "cop_forge" ? "cop_forge" : "cop_honest", seed, false);
    c.iod_change_period_sf = 20;
    c.duration_s = 10 * 30;
    for (auto& s : c.satellites) s.iod_phase = phase_for_change_at(c, 2);
    if (name == "cop_forge") {
      c.adversary.kind = Adversary::Kind::CopForge;
      c.adversary.at_sf = 2;
    }
    return c;
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown preset " + name);
}

}  // namespace osnma
