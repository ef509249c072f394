#include "osnma/inav.hpp"

#include <algorithm>

#include "osnma/bits.hpp"
#include "osnma/crc.hpp"
#include "osnma/error.hpp"

namespace osnma {

using namespace layout;

RawPage InavPage::raw() const {
  RawPage r{};
  std::copy(even_part.begin(), even_part.end(), r.begin());
  std::copy(odd_part.begin(), odd_part.end(), r.begin() + kPartBytes);
  return r;
}

uint32_t page_crc(const RawPage& raw) {
  // 196 bits left-padded with 4 zero bits -> 25 bytes
  std::array<uint8_t, 25> buf{};
  copy_bits(raw, 0, buf, 4, kEvenProtectedBits);
  copy_bits(raw, kOddFlag, buf, 4 + kEvenProtectedBits, kOddProtectedBits);
  return crc24q(buf);
}

InavPage parse_page(const RawPage& raw, uint8_t svid, GstTime gst) {
  if (read_bit(raw, kEvenFlag) != 0 || read_bit(raw, kOddFlag) != 1)
    throw Error(ErrorCode::BadFlags, "even/odd flags");
  if (read_bit(raw, kEvenPageType) || read_bit(raw, kOddPageType))
    throw Error(ErrorCode::BadPageType, "alert page");
  if (page_crc(raw) != read_bits(raw, kCrc, 24)) throw Error(ErrorCode::BadCrc, "page CRC");
  InavPage p;
  p.svid = svid;
  p.gst = gst;
  std::copy(raw.begin(), raw.begin() + kPartBytes, p.even_part.begin());
  std::copy(raw.begin() + kPartBytes, raw.end(), p.odd_part.begin());
  return p;
}

int word_type_of(const WordPayload& payload) { return int(payload[0] >> 2); }

bool word_has_iod(int word_type) { return word_type >= 1 && word_type <= 4; }

NavWord extract_word(const InavPage& page) {
  const RawPage raw = page.raw();
  NavWord w;
  copy_bits(raw, kData1, w.payload, 0, kData1Bits);
  copy_bits(raw, kData2, w.payload, kData1Bits, kData2Bits);
  w.word_type = word_type_of(w.payload);
  if (word_has_iod(w.word_type)) w.iod_nav = uint16_t(read_bits(w.payload, 6, 10));
  w.gst = page.gst;
  w.svid = page.svid;
  return w;
}

OsnmaField extract_osnma_field(const InavPage& page) {
  OsnmaField f{};
  copy_bits(page.odd_part, kOsnma - kOddFlag, f, 0, kOsnmaFieldBits);
  return f;
}

bool is_zero(const OsnmaField& f) {
  return std::all_of(f.begin(), f.end(), [](uint8_t b) { return b == 0; });
}

void reseal_page(RawPage& raw) { write_bits(raw, kCrc, 24, page_crc(raw)); }

RawPage emit_page(const WordPayload& word, const OsnmaField& osnma) {
  RawPage r{};
  write_bit(r, kOddFlag, true);
  copy_bits(word, 0, r, kData1, kData1Bits);
  copy_bits(word, kData1Bits, r, kData2, kData2Bits);
  copy_bits(osnma, 0, r, kOsnma, kOsnmaFieldBits);
  reseal_page(r);
  return r;
}

}  // namespace osnma
