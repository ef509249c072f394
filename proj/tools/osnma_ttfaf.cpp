// osnma-ttfaf: simulate page streams, replay them through the engine, sweep start offsets.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "osnma/engine.hpp"
#include "osnma/error.hpp"
#include "osnma/records.hpp"
#include "osnma/report.hpp"
#include "osnma/sbf.hpp"
#include "osnma/scenario.hpp"
#include "osnma/sweep.hpp"

namespace fs = std::filesystem;
using namespace osnma;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoFix = 2;
constexpr int kExitInput = 3;

struct ReplayArgs {
  std::string input;
  std::string input_format = "auto";
  std::string root_key;
  std::string policy = "cop_iod";
  int ts = 0;
  std::string fix_rule = "ephemeris";
};

std::vector<PageRecord> load_input(const ReplayArgs& a) {
  std::string fmt = a.input_format;
  if (fmt == "auto") fmt = fs::path(a.input).extension() == ".sbf" ? "sbf" : "jsonl";
  if (fmt == "sbf") {
    SbfStats st;
    auto recs = ingest_sbf_file(a.input, &st);
    std::fprintf(stderr, "sbf: %zu blocks, %zu inav, %zu crc skipped, %zu not E1-B\n", st.blocks, st.inav_blocks,
                 st.crc_skipped, st.not_e1b);
    return recs;
  }
  if (fmt != "jsonl") throw Error(ErrorCode::ConfigInvalid, "unknown input format: " + fmt);
  auto recs = load_records(a.input);
  sort_records(recs);
  return recs;
}

HotStart load_anchor(const ReplayArgs& a) {
  std::string path = a.root_key;
  if (path.empty()) path = (fs::path(a.input).parent_path() / "hotstart.json").string();
  return load_hotstart(path);
}

FixRule parse_fix_rule(const std::string& s) {
  if (s == "ephemeris") return FixRule::ephemeris_only();
  if (s == "full") return FixRule{};
  throw Error(ErrorCode::ConfigInvalid, "unknown fix rule: " + s);
}

void add_replay_options(CLI::App* cmd, ReplayArgs& a) {
  cmd->add_option("--input", a.input, "page records (.jsonl) or SBF log (.sbf)")->required();
  cmd->add_option("--input-format", a.input_format, "auto, jsonl or sbf");
  cmd->add_option("--root-key", a.root_key, "hot-start anchor JSON (default: hotstart.json next to input)");
  cmd->add_option("--policy", a.policy, "baseline, iod, page or cop_iod");
  cmd->add_option("--ts", a.ts, "time-sync requirement in seconds (default: policy maximum)");
  cmd->add_option("--fix-rule", a.fix_rule, "ephemeris (4 sats) or full (4 sats + 1 timing)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OSNMA time-to-first-authenticated-fix harness"};
  app.require_subcommand(1);

  std::string preset_name;
  uint64_t seed = 1;
  std::string out_dir = ".";
  auto* sim = app.add_subcommand("simulate", "generate a signed page stream from a preset");
  sim->add_option("--preset", preset_name, "scenario preset")->required();
  sim->add_option("--seed", seed, "RNG seed");
  sim->add_option("--out", out_dir, "output directory");
  bool list_presets = false;
  auto* presets = app.add_subcommand("presets", "list scenario presets");
  presets->callback([&] { list_presets = true; });

  ReplayArgs ra;
  int64_t step = 1, count = 0;
  unsigned threads = 1;
  std::string format = "csv";
  auto* sw = app.add_subcommand("sweep", "replay from every start offset and collect TTFAF");
  add_replay_options(sw, ra);
  sw->add_option("--step", step, "offset step in seconds");
  sw->add_option("--count", count, "number of offsets (default: all with >= 90 s of stream left)");
  sw->add_option("--threads", threads, "worker threads");
  sw->add_option("--out", out_dir, "output directory");
  sw->add_option("--format", format, "report format written next to sweep.json: csv or json");

  std::string sweep_file;
  auto* rep = app.add_subcommand("report", "render a sweep.json as CSV or JSON");
  rep->add_option("--sweep", sweep_file, "sweep.json")->required();
  rep->add_option("--format", format, "csv or json");
  rep->add_option("--out", out_dir, "output directory");

  std::string events_file;
  auto* ver = app.add_subcommand("verify", "single replay with event log");
  add_replay_options(ver, ra);
  ver->add_option("--events", events_file, "write events as JSONL here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_presets) {
      for (const auto& n : preset_names()) std::cout << n << "\n";
      return kExitOk;
    }
    if (*sim) {
      const auto out = Scenario(preset(preset_name, seed)).generate();
      fs::create_directories(out_dir);
      save_records((fs::path(out_dir) / "pages.jsonl").string(), out.records);
      save_hotstart((fs::path(out_dir) / "hotstart.json").string(), out.hotstart);
      std::ofstream t(fs::path(out_dir) / "truth.json");
      t << out.truth.to_json() << "\n";
      if (!t) throw Error(ErrorCode::IoFailure, "cannot write truth.json");
      std::fprintf(stderr, "%zu pages, %zu lost\n", out.records.size(), out.truth.lost_pages.size());
      return kExitOk;
    }
    if (*sw) {
      const auto records = load_input(ra);
      const auto anchor = load_anchor(ra);
      SweepOptions opt;
      opt.step = step;
      opt.count = count;
      opt.threads = threads;
      opt.fix_rule = parse_fix_rule(ra.fix_rule);
      const auto res = sweep(records, anchor, TimeSyncPolicy::named(ra.policy, ra.ts), opt);
      fs::create_directories(out_dir);
      std::ofstream f(fs::path(out_dir) / "sweep.json");
      f << res.to_json() << "\n";
      if (!f) throw Error(ErrorCode::IoFailure, "cannot write sweep.json");
      write_report(res, report_format_from_string(format), out_dir);
      if (res.metrics)
        std::printf("%s ts=%d lowest=%s average=%s p95=%s runs=%zu no_fix=%zu\n", res.policy.c_str(),
                    res.ts_seconds, format_number(res.metrics->lowest).c_str(),
                    format_number(res.metrics->average).c_str(), format_number(res.metrics->p95).c_str(),
                    res.points.size(), res.no_fix);
      else
        std::printf("%s ts=%d no fix in %zu runs\n", res.policy.c_str(), res.ts_seconds, res.points.size());
      return res.metrics ? kExitOk : kExitNoFix;
    }
    if (*rep) {
      std::ifstream f(sweep_file);
      if (!f) throw Error(ErrorCode::IoFailure, "cannot read " + sweep_file);
      std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
      for (const auto& p : write_report(SweepResult::from_json(text), report_format_from_string(format), out_dir))
        std::cout << p.string() << "\n";
      return kExitOk;
    }
    if (*ver) {
      const auto records = load_input(ra);
      EngineOptions eo;
      eo.fix_rule = parse_fix_rule(ra.fix_rule);
      Engine engine(load_anchor(ra), TimeSyncPolicy::named(ra.policy, ra.ts), eo);
      for (const auto& r : records) engine.process_page(r);
      std::ofstream file;
      if (!events_file.empty()) {
        file.open(events_file);
        if (!file) throw Error(ErrorCode::IoFailure, "cannot write " + events_file);
      }
      std::ostream& os = events_file.empty() ? std::cout : file;
      for (const auto& e : engine.events()) os << to_jsonl(e) << "\n";
      const auto& st = engine.stats();
      std::fprintf(stderr, "pages=%zu bad_crc=%zu duplicates=%zu key_conflicts=%zu\n", st.pages, st.bad_crc,
                   st.duplicates, st.key_conflicts);
      if (!engine.has_fix()) {
        std::fprintf(stderr, "no authenticated fix\n");
        return kExitNoFix;
      }
      std::fprintf(stderr, "ttfaf=%lld s\n", static_cast<long long>(*engine.ttfaf_seconds()));
      return kExitOk;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == ErrorCode::NoFixes ? kExitNoFix : kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
  return kExitOk;
}
