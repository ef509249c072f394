#include "osnma/policy.hpp"

#include "osnma/error.hpp"

namespace osnma {

void TimeSyncPolicy::validate() const {
  if (ts_seconds < 1 || ts_seconds > kTimeLimitSeconds)
    throw Error(ErrorCode::ConfigInvalid, "ts_seconds must be in [1, 30]");
}

TimeSyncPolicy TimeSyncPolicy::named(const std::string& name, int ts_override) {
  TimeSyncPolicy p;
  p.name = name;
  if (name == "baseline") {
    p.ts_seconds = kTimeLimitSeconds;
  } else if (name == "iod") {
    p.ts_seconds = kIodFullTs;
    p.enable_iod_link = true;
  } else if (name == "page") {
    p.ts_seconds = kIodFullTs;
    p.enable_iod_link = true;
    p.enable_page_level = true;
  } else if (name == "cop_iod") {
    p.ts_seconds = kCopTs;
    p.enable_iod_link = true;
    p.enable_page_level = true;
    p.enable_cop_link = true;
  } else {
    throw Error(ErrorCode::ConfigInvalid, "unknown policy " + name);
  }
  if (ts_override > 0) p.ts_seconds = ts_override;
  p.validate();
  return p;
}

std::string TimeSyncPolicy::describe() const {
  std::string s = name + " ts=" + std::to_string(ts_seconds);
  if (enable_page_level) s += " +page";
  if (enable_iod_link) s += " +iod";
  if (enable_cop_link) s += cop_active() ? " +cop" : " +cop(gated)";
  return s;
}

}  // namespace osnma
