#include "osnma/events.hpp"

#include <nlohmann/json.hpp>

namespace osnma {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::KeyVerified: return "KeyVerified";
    case EventKind::KeyFailed: return "KeyFailed";
    case EventKind::TagVerified: return "TagVerified";
    case EventKind::TagFailed: return "TagFailed";
    case EventKind::MacseqFailed: return "MacseqFailed";
    case EventKind::DataAuthenticated: return "DataAuthenticated";
    case EventKind::FixAuthenticated: return "FixAuthenticated";
    case EventKind::ForgeryDetected: return "ForgeryDetected";
  }
  return "?";
}

std::string to_jsonl(const AuthEvent& ev) {
  using J = nlohmann::ordered_json;
  auto gst = [](GstTime t) { return J{{"wn", t.wn}, {"tow", t.tow}}; };
  J d = J::object();
  if (ev.svids.size() > 1) d["svids"] = ev.svids;
  if (!ev.tag_id.empty()) d["tag"] = ev.tag_id;
  if (!ev.block_id.empty()) d["block"] = ev.block_id;
  if (ev.prn_d) d["prn_d"] = *ev.prn_d;
  if (ev.adkd) d["adkd"] = *ev.adkd;
  if (ev.cop) d["cop"] = *ev.cop;
  if (ev.data_sf) d["data_sf"] = *ev.data_sf;
  if (ev.key_sf) d["key_sf"] = *ev.key_sf;
  if (ev.key_start) d["key_start"] = gst(*ev.key_start);
  if (ev.latest_bit) d["latest_bit"] = gst(*ev.latest_bit);
  if (!ev.links.empty()) {
    J arr = J::array();
    for (const auto& l : ev.links) {
      J o{{"sf", l.sf}, {"via", l.via_cop ? "cop" : "observed"}};
      if (l.via_cop) o["tag"] = l.via_tag;
      arr.push_back(o);
    }
    d["links"] = arr;
  }
  if (ev.authenticated_cop) d["authenticated_cop"] = *ev.authenticated_cop;
  if (ev.ttfaf_seconds) d["ttfaf_seconds"] = *ev.ttfaf_seconds;
  if (!ev.note.empty()) d["note"] = ev.note;

  J j;
  j["kind"] = to_string(ev.kind);
  j["wn"] = ev.gst.wn;
  j["tow"] = ev.gst.tow;
  j["svid"] = ev.svids.empty() ? J(nullptr) : J(ev.svids.front());
  j["detail"] = d;
  return j.dump();
}

}  // namespace osnma
