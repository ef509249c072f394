#include "osnma/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "osnma/error.hpp"

namespace osnma {

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw Error(ErrorCode::ConfigInvalid, "unknown report format: " + s);
}

std::vector<std::pair<int64_t, double>> empirical_cdf(const SweepResult& sweep) {
  std::vector<int64_t> v;
  for (const auto& p : sweep.points)
    if (p.ttfaf_s) v.push_back(*p.ttfaf_s);
  std::sort(v.begin(), v.end());
  std::vector<std::pair<int64_t, double>> out;
  for (size_t i = 0; i < v.size(); ++i)
    if (i + 1 == v.size() || v[i + 1] != v[i]) out.emplace_back(v[i], double(i + 1) / double(v.size()));
  return out;
}

std::string format_number(double x) {
  double r = std::round(x * 1e6) / 1e6;
  if (r == 0) r = 0;  // no "-0"
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, r);
  return std::string(buf, res.ptr);
}

namespace {

std::string opt(const std::optional<int64_t>& v) { return v ? std::to_string(*v) : std::string(); }
std::string opt_json(const std::optional<int64_t>& v) { return v ? std::to_string(*v) : std::string("null"); }

std::string quote(const std::string& s) {
  std::string o = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') o += '\\';
    o += c;
  }
  return o + "\"";
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoFailure, "cannot write " + p.string());
  f << text;
  if (!f) throw Error(ErrorCode::IoFailure, "write failed: " + p.string());
}

}  // namespace

std::string ttfaf_csv(const SweepResult& s) {
  std::string o = "offset_s,ttfaf_s\n";
  for (const auto& p : s.points) o += std::to_string(p.offset_s) + "," + opt(p.ttfaf_s) + "\n";
  return o;
}

std::string cdf_csv(const SweepResult& s) {
  std::string o = "ttfaf_s,cdf\n";
  for (const auto& [v, f] : empirical_cdf(s)) o += std::to_string(v) + "," + format_number(f) + "\n";
  return o;
}

std::string min_per_subframe_csv(const SweepResult& s) {
  std::string o = "subframe,min_ttfaf_s\n";
  for (const auto& m : s.min_per_subframe) o += std::to_string(m.subframe) + "," + opt(m.min_ttfaf_s) + "\n";
  return o;
}

std::string metrics_csv(const SweepResult& s) {
  std::string o = "policy,ts_s,lowest_s,average_s,p95_s,count,no_fix\n";
  o += s.policy + "," + std::to_string(s.ts_seconds) + ",";
  if (s.metrics)
    o += format_number(s.metrics->lowest) + "," + format_number(s.metrics->average) + "," +
         format_number(s.metrics->p95) + "," + std::to_string(s.metrics->count);
  else
    o += ",,,0";
  o += "," + std::to_string(s.no_fix) + "\n";
  return o;
}

std::string report_json(const SweepResult& s) {
  std::ostringstream o;
  o << "{\n  \"policy\": " << quote(s.policy) << ",\n  \"ts_s\": " << s.ts_seconds << ",\n  \"start\": {\"wn\": "
    << s.start.wn << ", \"tow\": " << s.start.tow << "},\n  \"step_s\": " << s.step << ",\n  \"ttfaf\": [";
  for (size_t i = 0; i < s.points.size(); ++i)
    o << (i ? ",\n" : "\n") << "    {\"offset_s\": " << s.points[i].offset_s
      << ", \"ttfaf_s\": " << opt_json(s.points[i].ttfaf_s) << "}";
  o << (s.points.empty() ? "]" : "\n  ]") << ",\n  \"cdf\": [";
  const auto cdf = empirical_cdf(s);
  for (size_t i = 0; i < cdf.size(); ++i)
    o << (i ? ",\n" : "\n") << "    {\"ttfaf_s\": " << cdf[i].first << ", \"cdf\": " << format_number(cdf[i].second)
      << "}";
  o << (cdf.empty() ? "]" : "\n  ]") << ",\n  \"min_per_subframe\": [";
  for (size_t i = 0; i < s.min_per_subframe.size(); ++i)
    o << (i ? ",\n" : "\n") << "    {\"subframe\": " << s.min_per_subframe[i].subframe
      << ", \"min_ttfaf_s\": " << opt_json(s.min_per_subframe[i].min_ttfaf_s) << "}";
  o << (s.min_per_subframe.empty() ? "]" : "\n  ]") << ",\n  \"metrics\": ";
  if (s.metrics)
    o << "{\"lowest_s\": " << format_number(s.metrics->lowest) << ", \"average_s\": "
      << format_number(s.metrics->average) << ", \"p95_s\": " << format_number(s.metrics->p95)
      << ", \"count\": " << s.metrics->count << "}";
  else
    o << "null";
  o << ",\n  \"no_fix\": " << s.no_fix << "\n}\n";
  return o.str();
}

std::vector<std::filesystem::path> write_report(const SweepResult& s, ReportFormat format,
                                                const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> out;
  auto put = [&](const char* name, const std::string& text) {
    out.push_back(dir / name);
    write_file(out.back(), text);
  };
  if (format == ReportFormat::Csv) {
    put("ttfaf.csv", ttfaf_csv(s));
    put("cdf.csv", cdf_csv(s));
    put("min_per_subframe.csv", min_per_subframe_csv(s));
    put("metrics.csv", metrics_csv(s));
  } else {
    put("report.json", report_json(s));
  }
  return out;
}

}  // namespace osnma
