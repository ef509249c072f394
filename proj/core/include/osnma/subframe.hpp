#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "osnma/inav.hpp"

namespace osnma {

struct SubFrameBuffer {
  uint8_t svid = 0;
  GstTime sf_start;
  std::array<std::optional<InavPage>, kPagesPerSubframe> pages;
  std::vector<NavWord> words;
  std::array<std::optional<OsnmaField>, kPagesPerSubframe> osnma_fields;

  int received() const;
  bool complete() const { return received() == kPagesPerSubframe; }
};

struct IngestResult {
  int slot = 0;
  bool duplicate = false;
  bool subframe_complete = false;             // slot 14 filled
  std::optional<SubFrameBuffer> finalized;    // previous buffer on rollover
};

// Per-satellite assembly window. One instance per engine.
class SubFrameAssembler {
 public:
  // Throws SlotConflict when a different page already sits in the slot (first is kept).
  IngestResult ingest_page(const InavPage& page);
  const SubFrameBuffer* current(uint8_t svid) const;
  std::vector<SubFrameBuffer> flush();

 private:
  std::map<uint8_t, SubFrameBuffer> current_;
};

}  // namespace osnma
