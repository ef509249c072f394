#include "osnma/records.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>

#include "osnma/bits.hpp"
#include "osnma/error.hpp"

namespace osnma {

std::string to_jsonl(const PageRecord& rec) {
  // Fixed key order keeps files byte-deterministic.
  return "{\"wn\":" + std::to_string(rec.gst.wn) + ",\"tow\":" + std::to_string(rec.gst.tow) +
         ",\"svid\":" + std::to_string(rec.svid) + ",\"page_hex\":\"" + to_hex(rec.page) + "\"}";
}

PageRecord record_from_jsonl(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  try {
    PageRecord r;
    int64_t wn = j.at("wn").get<int64_t>(), tow = j.at("tow").get<int64_t>();
    int64_t svid = j.at("svid").get<int64_t>();
    if (wn < 0 || tow < 0 || tow >= GstTime::kSecondsPerWeek || svid < 1 || svid > 255)
      throw Error(ErrorCode::ParseError, "record field out of range");
    r.gst = GstTime{uint32_t(wn), uint32_t(tow)};
    r.svid = uint8_t(svid);
    auto bytes = from_hex(j.at("page_hex").get<std::string>());
    if (bytes.size() != kPageBytes) throw Error(ErrorCode::ParseError, "page_hex must be 60 hex chars");
    std::copy(bytes.begin(), bytes.end(), r.page.begin());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::vector<PageRecord> read_records(std::istream& in) {
  std::vector<PageRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(record_from_jsonl(line));
  }
  return out;
}

void write_records(std::ostream& out, const std::vector<PageRecord>& records) {
  for (const auto& r : records) out << to_jsonl(r) << '\n';
}

std::vector<PageRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  return read_records(in);
}

void save_records(const std::string& path, const std::vector<PageRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path);
  write_records(out, records);
  if (!out) throw Error(ErrorCode::IoFailure, "write failed " + path);
}

void sort_records(std::vector<PageRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const PageRecord& a, const PageRecord& b) {
    return std::pair(a.gst, a.svid) < std::pair(b.gst, b.svid);
  });
}

}  // namespace osnma
