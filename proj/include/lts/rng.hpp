// Seedable deterministic randomness.  The stream is SHAKE256 in counter
// mode over a 32-byte key, so the same seed reproduces the same byte
// sequence on every platform, and independent substreams can be split off
// deterministically with fork() — the stream-splitting rule promised by the
// NIZK concurrency contract.

#ifndef LTS_RNG_HPP
#define LTS_RNG_HPP

#include <array>
#include <string>

#include "lts/common.hpp"

namespace lts {

class RngHandle {
 public:
  // Seeds from arbitrary bytes (hashed to the internal key).
  explicit RngHandle(const bytes &seed);
  explicit RngHandle(u64 seed);

  void fill(void *out, size_t len);
  bytes get_bytes(size_t len);
  u64 next_u64();
  // Uniform in [0, bound) by rejection; bound > 0.
  u64 below(u64 bound);
  // Uniform signed value in [-radius, radius].
  i64 centered(u64 radius);

  // Independent substream: key = SHAKE256(key || 0xF0 || label).
  RngHandle fork(const std::string &label) const;
  RngHandle fork(u64 index) const;

 private:
  RngHandle() = default;
  void refill();

  std::array<u8, 32> key_{};
  u64 counter_ = 0;
  bytes buf_;
  size_t pos_ = 0;
};

}  // namespace lts

#endif  // LTS_RNG_HPP
