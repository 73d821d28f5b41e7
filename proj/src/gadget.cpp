#include "lts/gadget.hpp"

namespace lts {

ZqMatrix gadget_matrix(size_t n, u64 q, size_t m) {
  size_t k = ceil_log2(q);
  if (m < n * k) throw DimensionError("gadget: width too small");
  ZqMatrix G(q, n, m);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < k; ++j) G.at(i, i * k + j) = (u64(1) << j) % q;
  return G;
}

BitVector bin_decompose(const ZqVector &u) {
  u.check_canonical();
  size_t k = ceil_log2(u.q);
  BitVector out(u.size() * k);
  for (size_t i = 0; i < u.size(); ++i) {
    u64 v = u[i];
    for (size_t j = 0; j < k; ++j) out[i * k + j] = (v >> j) & 1;
  }
  return out;
}

ZqVector bin_recompose(const BitVector &bits, u64 q) {
  bits.check_bits();
  size_t k = ceil_log2(q);
  if (bits.size() % k != 0) throw DimensionError("gadget: length mismatch");
  size_t n = bits.size() / k;
  ZqVector out(q, n);
  for (size_t i = 0; i < n; ++i) {
    u64 v = 0;
    for (size_t j = 0; j < k; ++j)
      if (bits[i * k + j]) v += u64(1) << j;
    out[i] = v % q;
  }
  return out;
}

size_t range_gadget_len(u64 beta) {
  // Number of bits of 2*beta: k = ceil(log2(2*beta + 1)).
  u64 v = 2 * beta;
  size_t k = 0;
  while (v > 0) {
    v >>= 1;
    ++k;
  }
  return k;
}

IntVector range_gadget(u64 beta) {
  if (beta < 1) throw DimensionError("range_gadget: beta must be >= 1");
  size_t k = range_gadget_len(beta);
  IntVector g(k, static_cast<i64>(beta));
  for (size_t i = 0; i < k; ++i)
    g[i] = static_cast<i64>((2 * beta + (u64(1) << i)) >> (i + 1));
  return g;
}

BitVector range_decompose(u64 a, u64 beta) {
  if (a > 2 * beta) throw DimensionError("range_decompose: value out of range");
  IntVector g = range_gadget(beta);
  BitVector out(g.size());
  // Entries of g are non-increasing; greedy from the largest downward.
  u64 rem = a;
  for (size_t i = 0; i < g.size(); ++i) {
    u64 gi = static_cast<u64>(g[i]);
    if (gi <= rem) {
      out[i] = 1;
      rem -= gi;
    }
  }
  if (rem != 0)
    throw std::logic_error("range_decompose: greedy failed (unreachable)");
  return out;
}

u64 range_recompose(const BitVector &bits, u64 beta) {
  bits.check_bits();
  IntVector g = range_gadget(beta);
  if (bits.size() != g.size())
    throw DimensionError("range_recompose: length mismatch");
  u64 acc = 0;
  for (size_t i = 0; i < g.size(); ++i)
    if (bits[i]) acc += static_cast<u64>(g[i]);
  return acc;
}

}  // namespace lts
