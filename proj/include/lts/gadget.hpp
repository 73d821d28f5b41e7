// Gadget matrix, binary decomposition bin(.), and the range gadget used by
// the relation compiler to binarize bounded witnesses.

#ifndef LTS_GADGET_HPP
#define LTS_GADGET_HPP

#include "lts/zq.hpp"

namespace lts {

// G = (I_n (x) (1 2 ... 2^{k-1}) | 0) of shape n x m, k = ceil(log2 q).
ZqMatrix gadget_matrix(size_t n, u64 q, size_t m);

// Binary digits of the canonical representative, n*ceil(log2 q) bits.
// G * bin(u) = u holds exactly over the integers (each entry < q <= 2^k).
BitVector bin_decompose(const ZqVector &u);
ZqVector bin_recompose(const BitVector &bits, u64 q);

// g1 = (floor((2b+1)/2), floor((2b+2)/4), ..., floor((2b+2^{k-1})/2^k)),
// k = ceil(log2(2b)) + 1; every a in [0, 2b] has a binary combination.
IntVector range_gadget(u64 beta);
size_t range_gadget_len(u64 beta);

// Greedy high-to-low decomposition (deterministic); a in [0, 2*beta].
BitVector range_decompose(u64 a, u64 beta);
u64 range_recompose(const BitVector &bits, u64 beta);

}  // namespace lts

#endif  // LTS_GADGET_HPP
