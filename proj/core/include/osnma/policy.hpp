#pragma once

#include <string>

namespace osnma {

inline constexpr int kTimeLimitSeconds = 30;   // T_L
inline constexpr int kIodFullTs = 25;          // WT5 of the tag sub-frame usable
inline constexpr int kCopTs = 17;              // WT4 of the key sub-frame usable

struct TimeSyncPolicy {
  std::string name = "custom";
  int ts_seconds = kTimeLimitSeconds;
  bool enable_page_level = false;
  bool enable_iod_link = false;
  bool enable_cop_link = false;

  // Throws ConfigInvalid unless 1 <= ts <= 30.
  void validate() const;
  bool cop_active() const { return enable_cop_link && ts_seconds <= kCopTs; }

  // baseline | iod | page | cop_iod; ts_override > 0 replaces the default ts.
  static TimeSyncPolicy named(const std::string& name, int ts_override = 0);
  std::string describe() const;
};

// Minimum satellite counts with authenticated data for a fix.
struct FixRule {
  int min_ephemeris_sats = 4;
  int min_timing_sats = 1;

  static FixRule ephemeris_only() { return {4, 0}; }
  bool operator==(const FixRule&) const = default;
};

}  // namespace osnma
