// Shared test utilities: independent little oracles (naive 128-bit linear
// algebra, reference modular arithmetic) so library results are checked
// against code that does not share the implementation under test.

#ifndef LTS_TESTS_HELPERS_HPP
#define LTS_TESTS_HELPERS_HPP

#include "lts/rng.hpp"
#include "lts/zq.hpp"

namespace lts::testing {

// Naive reference A*x mod q with i128 accumulation (independent of mat_vec).
inline ZqVector ref_mat_vec(const ZqMatrix &A, const ZqVector &x) {
  ZqVector out(A.q, A.rows);
  for (size_t r = 0; r < A.rows; ++r) {
    i128 acc = 0;
    for (size_t c = 0; c < A.cols; ++c) acc += i128(A.at(r, c)) * x[c];
    out[r] = reduce_i128(acc, A.q);
  }
  return out;
}

// Reference (a*b) mod q through long division on 128 bits.
inline u64 ref_mul_mod(u64 a, u64 b, u64 q) {
  u128 p = u128(a) * b;
  return static_cast<u64>(p - (p / q) * q);
}

inline IntVector small_int_vector(size_t dim, i64 bound, RngHandle &rng) {
  IntVector out(dim, bound);
  for (size_t i = 0; i < dim; ++i) out[i] = rng.centered(u64(bound));
  return out;
}

}  // namespace lts::testing

#endif  // LTS_TESTS_HELPERS_HPP
