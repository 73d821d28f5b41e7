// BDLOP-structured commitments and the auxiliary string commitment used by
// the Appendix-C Sigma-protocol.
//
// B1 = [[ I_{l1} |   B11        ],      column groups: [l1 | mid | l2]
//       [ 0      | I_mid | B12  ]]
// Only the random sub-blocks B11 (l1 x (mid+l2)) and B12 (mid x l2) are
// stored; the identity structure is implicit, which keeps the CRS linear in
// the witness dimension instead of quadratic.

#ifndef LTS_COMMIT_HPP
#define LTS_COMMIT_HPP

#include "lts/rng.hpp"
#include "lts/serial.hpp"
#include "lts/zq.hpp"

namespace lts {

struct BdlopMatrix {
  u64 q = 0;
  size_t l1 = 0, mid = 0, l2 = 0;  // mid = message length (n' or |S|)
  ZqMatrix Btop;  // l1 x (mid + l2)
  ZqMatrix Bbot;  // mid x l2

  size_t commit_len() const { return l1 + mid; }
  size_t rand_len() const { return l1 + mid + l2; }

  // Test-only expansion of the full (l1+mid) x (l1+mid+l2) matrix.
  ZqMatrix dense() const;

  void encode_into(Encoder &enc) const;
  static BdlopMatrix decode_from(Decoder &dec);
};

struct BdlopCrs {
  BdlopMatrix B1;  // mid = n' (witness commitments)
  BdlopMatrix B2;  // mid = |S| (cross-term commitments)
  double sigma_1 = 0;
  double sigma_2 = 0;
  u64 p = 0;
  double M_rej = 0;

  bytes encode() const;
  static BdlopCrs decode(const bytes &data);
  std::array<u8, 32> fingerprint() const;
};

// Samples the random sub-blocks uniformly; deterministic under the rng seed.
BdlopMatrix bdlop_matrix_setup(size_t l1, size_t mid, size_t l2, u64 q,
                               RngHandle &rng);
BdlopCrs bdlop_setup(size_t l1, size_t l2, size_t n_cols, size_t ell_cols,
                     u64 q, double sigma_1, double sigma_2, u64 p, double M_rej,
                     RngHandle &rng);

// B * s + (0 || msg) mod q with s signed (the commitment randomness).
ZqVector bdlop_commit(const BdlopMatrix &B, const IntVector &s,
                      const ZqVector &msg);

// Auxiliary string commitment: SHAKE256("AUXCOM" || len || rho || payload).
struct AuxOpening {
  std::array<u8, 32> rho{};
};
struct AuxCommitment {
  std::array<u8, 32> digest{};
  bool operator==(const AuxCommitment &) const = default;
};

AuxCommitment aux_commit_with(const bytes &payload, const AuxOpening &opening);
std::pair<AuxCommitment, AuxOpening> aux_commit(const bytes &payload,
                                                RngHandle &rng);
bool aux_verify(const AuxCommitment &com, const bytes &payload,
                const AuxOpening &opening);

}  // namespace lts

#endif  // LTS_COMMIT_HPP
