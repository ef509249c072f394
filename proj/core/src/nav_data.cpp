#include "osnma/nav_data.hpp"

#include "osnma/error.hpp"

namespace osnma {

static constexpr int kEphemerisWords[] = {1, 2, 3, 4, 5};
static constexpr int kTimingWords[] = {6, 10};

std::span<const int> required_words(BlockKind kind) {
  if (kind == BlockKind::Ephemeris) return kEphemerisWords;
  return kTimingWords;
}

BlockKind block_kind_for_adkd(int adkd) {
  switch (adkd) {
    case 0:
    case 12: return BlockKind::Ephemeris;
    case 4: return BlockKind::Timing;
    default: throw Error(ErrorCode::ConfigInvalid, "unknown ADKD " + std::to_string(adkd));
  }
}

bool NavDataBlock::complete() const {
  for (int wt : required_words(kind))
    if (!words.count(wt)) return false;
  return true;
}

std::string NavDataBlock::label() const {
  std::string s = "B" + std::to_string(id) + ":" + std::to_string(svid);
  s += kind == BlockKind::Ephemeris ? "/eph" : "/time";
  if (iod) s += "/iod" + std::to_string(*iod);
  return s;
}

}  // namespace osnma
