// Statement compiler: lowers the scheme's mod-q' relations (SIS preimage,
// LWE samples, GPV encryption, tag equation) together with the native mod-q
// certificate equation into one quadratic statement over q in the form
// consumed by the Sigma-protocol:
//
//   A * x = y mod q   and   x[h] = x[i]*x[j] for (h,i,j) in S.
//
// Mod-q' rows are lifted to Z with an explicit slack multiple of q', every
// bounded value is shifted nonnegative and range-decomposed into bit
// coordinates (with b = b^2 triples), and products id * (G v2)_j in the
// certificate equation get one auxiliary coordinate and one triple per row.

#ifndef LTS_RELATIONS_HPP
#define LTS_RELATIONS_HPP

#include <string>

#include "lts/params.hpp"
#include "lts/zkq.hpp"

namespace lts {

struct Segment {
  std::string name;
  size_t offset = 0;
  size_t length = 0;
};

struct WitnessLayout {
  size_t n_prime = 0;
  std::vector<Segment> segs;

  const Segment &seg(const std::string &name) const;
  bool has(const std::string &name) const;
};

// ---------------------------------------------------------------------------
// Generic Appendix-D lifting of a standalone bounded system (test surface and
// the building block behind the scheme statements).

struct LiftedSystem {
  QuadraticStatement stmt;
  WitnessLayout layout;  // segments x0_bits..x{n-1}_bits then slack_bits

  // Bookkeeping needed to place an integer solution into the lifted witness.
  ZqMatrix A_orig;           // over q'
  ZqVector y_orig;           // over q'
  std::vector<i64> beta;     // |x_j| <= beta_j
  std::vector<i64> slack_lo; // per-row slack lower bound
  std::vector<i64> slack_hi;

  // x must satisfy A_orig * x = y_orig mod q' and the declared bounds.
  ZqVector assemble(const IntVector &x) const;
};

// Requires beta_j >= 1 for all columns.
LiftedSystem lift_and_binarize(const ZqMatrix &A, const ZqVector &y,
                               const std::vector<i64> &beta, u64 q);

// ---------------------------------------------------------------------------
// R_Sign (Def. 5) and R_Claim (Def. 6).

struct SignStatementInputs {
  // Group public material.
  ZqMatrix F;        // n x m_F      over q'
  ZqMatrix B;        // n x m_B      over q'
  ZqMatrix M_mat;    // m_M x n      over q'
  ZqMatrix A;        // n x m_1      over q
  ZqMatrix A_prime;  // n x m_2      over q
  ZqMatrix D;        // n x m_B*kq'  over q
  ZqVector u;        // n            over q
  // Per-signature values.
  ZqVector v_id;     // H_GPV(vk), n over q'
  ZqVector c;        // ciphertext, m_B + 1 over q'
  ZqVector t;        // tracing tag, m_M over q'
};

struct SignSecrets {
  BitVector z;       // usk, m_F bits
  u64 id = 0;        // in [1, N]
  ZqVector y;        // pseudonym, m_B over q'
  IntVector v1;      // |.| <= beta_1, length m_1
  IntVector v2;      // |.| <= beta_2, length m_2
  ZqVector r_enc;    // encryption randomness, n over q'
  IntVector e_join;  // |.| <= B_lwe, length m_B
  IntVector e_c;     // |.| <= B_gpv, length m_B + 1
  IntVector e_t;     // |.| <= B_lwe, length m_M
};

struct ClaimSecrets {
  BitVector z;       // m_F bits
  IntVector e_t;     // |.| <= B_lwe, length m_M
};

struct CompiledStatement {
  QuadraticStatement stmt;
  WitnessLayout layout;
};

CompiledStatement assemble_sign_statement(const SignStatementInputs &in,
                                          const ParamSet &pp);
ZqVector assemble_sign_witness(const SignStatementInputs &in,
                               const SignSecrets &sec, const ParamSet &pp,
                               const CompiledStatement &cs);

CompiledStatement assemble_claim_statement(const ZqMatrix &F,
                                           const ZqMatrix &M_mat,
                                           const ZqVector &t,
                                           const ParamSet &pp);
ZqVector assemble_claim_witness(const ZqMatrix &F, const ZqMatrix &M_mat,
                                const ZqVector &t, const ClaimSecrets &sec,
                                const ParamSet &pp,
                                const CompiledStatement &cs);

// ---------------------------------------------------------------------------
// Sizing hooks for setup / validate_params.

struct LayoutDims {
  size_t n_prime = 0;    // witness length
  size_t n_triples = 0;  // |S|
};

// Computed from ParamSet scalars alone (no matrices), and exact: assembly
// asserts its layout matches these numbers.
LayoutDims sign_layout_dims(const ParamSet &pp);
LayoutDims claim_layout_dims(const ParamSet &pp);

// Worst-case "mod-q equality implies Z equality" bounds per lifted block,
// plus the Prop. C.1 ZK bound; consumed by setup's q selection and by
// validate_params.
std::vector<std::pair<std::string, double>> q_lower_bounds(const ParamSet &pp);

}  // namespace lts

#endif  // LTS_RELATIONS_HPP
