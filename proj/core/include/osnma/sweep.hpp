#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osnma/engine.hpp"

namespace osnma {

struct SweepOptions {
  std::optional<GstTime> start;  // default: first sub-frame boundary at or after the first record
  int64_t count = 0;             // number of offsets; 0: every step until 90 s before the stream end
  int64_t step = 1;
  FixRule fix_rule;
  unsigned threads = 1;
};

struct SweepPoint {
  int64_t offset_s = 0;
  std::optional<int64_t> ttfaf_s;
  bool operator==(const SweepPoint&) const = default;
};

struct Metrics {
  double lowest = 0;
  double average = 0;
  double p95 = 0;
  size_t count = 0;
};

struct SubframeMinimum {
  int64_t subframe = 0;  // relative to the sweep start
  std::optional<int64_t> min_ttfaf_s;
};

struct SweepResult {
  std::string policy;
  int ts_seconds = 0;
  GstTime start;
  int64_t step = 1;
  std::vector<SweepPoint> points;
  std::vector<SubframeMinimum> min_per_subframe;
  std::optional<Metrics> metrics;
  size_t no_fix = 0;

  std::string to_json() const;
  static SweepResult from_json(const std::string& text);
};

// Nearest-rank P95; throws NoFixes on empty input.
Metrics metrics(std::span<const int64_t> values);
Metrics metrics(const SweepResult& sweep);

// Throws StreamTooShort when the stream spans less than three sub-frames.
SweepResult sweep(std::span<const PageRecord> records, const HotStart& anchor, const TimeSyncPolicy& policy,
                  const SweepOptions& options = {});
// Same, over pages parsed once up front.
SweepResult sweep(std::span<const PreparedPage> pages, const HotStart& anchor, const TimeSyncPolicy& policy,
                  const SweepOptions& options = {});

// TTFAF of one run started at `origin`; nullopt when no fix before the stream ends.
std::optional<int64_t> run_from(std::span<const PreparedPage> pages, const HotStart& anchor,
                                const TimeSyncPolicy& policy, GstTime origin, const FixRule& rule);

}  // namespace osnma
