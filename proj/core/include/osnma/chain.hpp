#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "osnma/gst.hpp"

namespace osnma {

enum class HashFunction : uint8_t { Sha256 = 0 };
enum class MacFunction : uint8_t { HmacSha256 = 0 };

struct ChainConfig {
  int key_size_bits = 128;
  int tag_size_bits = 40;
  int taginfo_size_bits = 16;
  int macseq_size_bits = 12;
  int tags_per_subframe = 6;
  HashFunction hash_id = HashFunction::Sha256;
  MacFunction mac_id = MacFunction::HmacSha256;
  std::array<uint8_t, 6> alpha{};
  int maclt_id = 34;

  // Throws ConfigInvalid.
  void validate() const;

  int entry_bits() const { return tag_size_bits + taginfo_size_bits; }
  int key_offset_bits() const { return tags_per_subframe * entry_bits(); }
  int meaningful_bits() const { return key_offset_bits() + key_size_bits; }
  int key_bytes() const { return key_size_bits / 8; }
  int key_first_page() const { return key_offset_bits() / 32; }
  int key_last_page() const { return (meaningful_bits() - 1) / 32; }
  // Seconds after the disclosing sub-frame start at which the first key bit is on air.
  int key_start_offset() const { return 2 * key_first_page() + 1; }

  bool operator==(const ChainConfig&) const = default;
};

// A chain key; chain_index counts sub-frames from the injected root.
struct TeslaKey {
  std::vector<uint8_t> bits;
  GstTime gst_sf;
  int64_t chain_index = 0;

  bool operator==(const TeslaKey&) const = default;
};

// Sub-frame offset between a tag and the key that signs it.
inline int key_delay_subframes(int adkd) { return adkd == 12 ? 11 : 1; }

}  // namespace osnma
