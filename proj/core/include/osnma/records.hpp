#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "osnma/inav.hpp"

namespace osnma {

// Canonical page record: one nominal page as seen by a receiver.
struct PageRecord {
  GstTime gst;
  uint8_t svid = 0;
  RawPage page{};

  bool operator==(const PageRecord&) const = default;
};

// {"wn":..,"tow":..,"svid":..,"page_hex":"<60 hex>"}
std::string to_jsonl(const PageRecord& rec);
PageRecord record_from_jsonl(std::string_view line);

std::vector<PageRecord> read_records(std::istream& in);
void write_records(std::ostream& out, const std::vector<PageRecord>& records);
std::vector<PageRecord> load_records(const std::string& path);
void save_records(const std::string& path, const std::vector<PageRecord>& records);

// Stable ordering by (gst, svid).
void sort_records(std::vector<PageRecord>& records);

}  // namespace osnma
