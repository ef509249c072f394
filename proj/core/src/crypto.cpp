#include "osnma/crypto.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/sha.h>

#include "osnma/error.hpp"

namespace osnma {

Digest256 sha256(std::span<const uint8_t> data) {
  Digest256 out{};
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Digest256 hmac_sha256(std::span<const uint8_t> key, std::span<const uint8_t> data) {
  Digest256 out{};
  unsigned int len = 0;
  static const uint8_t empty = 0;
  if (!HMAC(EVP_sha256(), key.empty() ? &empty : key.data(), int(key.size()),
            data.empty() ? &empty : data.data(), data.size(), out.data(), &len) ||
      len != out.size())
    throw Error(ErrorCode::ConfigInvalid, "HMAC failure");
  return out;
}

}  // namespace osnma
