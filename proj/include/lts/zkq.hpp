// Sigma-protocol for linear-plus-quadratic relations over Z_q:
//
//   A * x = y mod q   and   x[h] = x[i] * x[j] mod q  for all (h,i,j) in S.
//
// Prover commits (via BDLOP c1..c4 plus an auxiliary string commitment),
// receives a challenge in [-p, p], and answers with masked openings under
// rejection sampling.  3-soundness: three accepting transcripts with
// pairwise-distinct challenges yield the witness.

#ifndef LTS_ZKQ_HPP
#define LTS_ZKQ_HPP

#include <optional>

#include "lts/commit.hpp"

namespace lts {

struct QuadraticTriple {
  u32 h = 0, i = 0, j = 0;  // 0-based witness indices: x[h] = x[i]*x[j]
  bool operator==(const QuadraticTriple &) const = default;
};

struct QuadraticStatement {
  ZqSparseMatrix A;  // m' x n' over q
  ZqVector y;        // m'
  std::vector<QuadraticTriple> S;

  u64 q() const { return A.q; }
  size_t n_prime() const { return A.cols; }

  bytes encode() const;
  static QuadraticStatement decode(const bytes &data);
  std::array<u8, 32> fingerprint() const;
};

// True iff x satisfies both clauses.  Throws on dimension mismatch.
bool witness_check(const QuadraticStatement &stmt, const ZqVector &x);

struct SigmaResponse {
  ZqVector c1;   // commitment to x     (length l1 + n')
  ZqVector c3;   // commitment to a     (length l1 + |S|)
  AuxOpening rho;
  ZqVector z0;   // ch*x + r mod q      (length n')
  IntVector z1;  // ch*s1 + s2          (length l1 + l2 + n')
  IntVector z2;  // ch*s3 - s4          (length l1 + l2 + |S|)

  void encode_into(Encoder &enc) const;
  static SigmaResponse decode_from(Decoder &dec);
};

// Everything the prover keeps between commit and respond.
struct ProverState {
  ZqVector x;              // witness
  ZqVector r;              // uniform mask
  IntVector s1, s2, s3, s4;
  ZqVector a, b;           // cross terms per triple
  ZqVector t, c1, c2, c3, c4;
  AuxOpening rho;
  AuxCommitment com_aux;
};

// Commitment step.  Requires witness_check(stmt, wit) to hold.
ProverState sigma_commit(const BdlopCrs &crs, const QuadraticStatement &stmt,
                         const ZqVector &wit, RngHandle &rng);

// Response step; nullopt = rejection-sampling abort (prob. ~ 1 - 1/M).
std::optional<SigmaResponse> sigma_respond(const BdlopCrs &crs,
                                           const ProverState &state,
                                           i64 challenge, RngHandle &rng);

bool sigma_verify(const BdlopCrs &crs, const QuadraticStatement &stmt,
                  const AuxCommitment &com_aux, i64 challenge,
                  const SigmaResponse &rsp);

// Extracts x from transcripts (ch_a, rsp_a), (ch_b, rsp_b) with ch_a != ch_b
// sharing com_aux; the third transcript is a consistency filter.  Returns
// nullopt if the candidate fails witness_check.
std::optional<ZqVector> sigma_extract(const QuadraticStatement &stmt,
                                      i64 ch_a, const SigmaResponse &rsp_a,
                                      i64 ch_b, const SigmaResponse &rsp_b,
                                      i64 ch_c, const SigmaResponse &rsp_c);

// Verifier norm bounds: ||z1|| <= 2 sqrt(l1+l2+n')(sigma2 + p sigma1), same
// shape for z2 with |S|.
double sigma_norm_bound(const BdlopCrs &crs, size_t mid_len);

}  // namespace lts

#endif  // LTS_ZKQ_HPP
