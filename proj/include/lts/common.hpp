// Shared integer aliases and error types for the desk-scale traceable
// signature library.
//
// Everything in this library works over explicit moduli below 2^62 so that
// a product of two canonical representatives always fits in an unsigned
// 128-bit integer.  No arbitrary-precision arithmetic is used anywhere.

#ifndef LTS_COMMON_HPP
#define LTS_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lts {

using u8 = uint8_t;
using u32 = uint32_t;
using u64 = uint64_t;
using i64 = int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

using bytes = std::vector<uint8_t>;

// Largest modulus the library accepts; see lattice_core design notes.
inline constexpr u64 kMaxModulus = (u64(1) << 62);

// Thrown for structurally invalid inputs (dimension mismatches, mixed
// moduli, out-of-range arguments).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when a sampler or protocol exhausts a retry budget or is asked to
// run with parameters below its validity floor.
struct SamplingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown on malformed or corrupted serialized artifacts.
struct CodecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline u64 ceil_log2(u64 x) {
  if (x <= 1) return 1;
  u64 k = 0;
  u64 v = x - 1;
  while (v > 0) {
    v >>= 1;
    ++k;
  }
  return k;
}

inline u64 ceil_div(u64 a, u64 b) { return (a + b - 1) / b; }

}  // namespace lts

#endif  // LTS_COMMON_HPP
