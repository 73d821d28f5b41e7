// Thin wrapper around SHAKE256 (OpenSSL EVP) used as the library's only
// hash primitive: extendable output, fixed digests, and the seed expander
// behind RngHandle all go through it.

#ifndef LTS_XOF_HPP
#define LTS_XOF_HPP

#include <array>

#include "lts/common.hpp"

namespace lts {

// Incremental SHAKE256 absorber; squeeze length chosen at finalization.
class Xof {
 public:
  Xof();
  ~Xof();
  Xof(const Xof &) = delete;
  Xof &operator=(const Xof &) = delete;

  void update(const void *data, size_t len);
  void update(const bytes &data) { update(data.data(), data.size()); }
  // Appends an 8-byte little-endian length field (domain separation).
  void update_len(u64 len);
  // One-shot squeeze; the object must not be used afterwards.
  bytes squeeze(size_t outlen);

 private:
  void *ctx_;  // EVP_MD_CTX
};

bytes shake256(const bytes &input, size_t outlen);
std::array<u8, 32> shake256_32(const bytes &input);

}  // namespace lts

#endif  // LTS_XOF_HPP
