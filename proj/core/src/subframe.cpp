#include "osnma/subframe.hpp"

#include "osnma/error.hpp"

namespace osnma {

int SubFrameBuffer::received() const {
  int n = 0;
  for (const auto& p : pages) n += p.has_value();
  return n;
}

IngestResult SubFrameAssembler::ingest_page(const InavPage& page) {
  IngestResult res;
  const GstTime sf = page.gst.subframe_start();
  auto it = current_.find(page.svid);
  if (it != current_.end() && it->second.sf_start != sf) {
    if (sf < it->second.sf_start) throw Error(ErrorCode::OutOfOrderInput, "page older than buffer");
    res.finalized = std::move(it->second);
    current_.erase(it);
    it = current_.end();
  }
  if (it == current_.end()) {
    SubFrameBuffer b;
    b.svid = page.svid;
    b.sf_start = sf;
    it = current_.emplace(page.svid, std::move(b)).first;
  }
  SubFrameBuffer& buf = it->second;
  res.slot = page.gst.page_slot();
  auto& slot = buf.pages[size_t(res.slot)];
  if (slot) {
    if (*slot != page) throw Error(ErrorCode::SlotConflict, "slot " + std::to_string(res.slot));
    res.duplicate = true;
    return res;
  }
  slot = page;
  buf.words.push_back(extract_word(page));
  buf.osnma_fields[size_t(res.slot)] = extract_osnma_field(page);
  res.subframe_complete = res.slot == kPagesPerSubframe - 1;
  return res;
}

const SubFrameBuffer* SubFrameAssembler::current(uint8_t svid) const {
  auto it = current_.find(svid);
  return it == current_.end() ? nullptr : &it->second;
}

std::vector<SubFrameBuffer> SubFrameAssembler::flush() {
  std::vector<SubFrameBuffer> out;
  for (auto& [svid, b] : current_) out.push_back(std::move(b));
  current_.clear();
  return out;
}

}  // namespace osnma
