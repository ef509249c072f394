#include "osnma/gst.hpp"

#include "osnma/error.hpp"

namespace osnma {

GstTime GstTime::from_seconds(int64_t total) {
  if (total < 0) throw Error(ErrorCode::ConfigInvalid, "negative GST");
  GstTime t;
  t.wn = uint32_t(total / kSecondsPerWeek);
  t.tow = uint32_t(total % kSecondsPerWeek);
  return t;
}

std::string GstTime::to_string() const {
  return std::to_string(wn) + ":" + std::to_string(tow);
}

}  // namespace osnma
