#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "osnma/sweep.hpp"

namespace osnma {

enum class ReportFormat { Csv, Json };

ReportFormat report_format_from_string(const std::string& s);

// Empirical CDF over the non-null TTFAFs: (value, fraction of runs <= value) per distinct value.
std::vector<std::pair<int64_t, double>> empirical_cdf(const SweepResult& sweep);

// Shortest decimal text of x rounded to 6 decimals; shared by both formats.
std::string format_number(double x);

std::string ttfaf_csv(const SweepResult& sweep);
std::string cdf_csv(const SweepResult& sweep);
std::string min_per_subframe_csv(const SweepResult& sweep);
std::string metrics_csv(const SweepResult& sweep);
std::string report_json(const SweepResult& sweep);

// Csv: ttfaf.csv, cdf.csv, min_per_subframe.csv, metrics.csv. Json: report.json.
// Returns the written paths. Throws IoFailure.
std::vector<std::filesystem::path> write_report(const SweepResult& sweep, ReportFormat format,
                                                const std::filesystem::path& dir);

}  // namespace osnma
