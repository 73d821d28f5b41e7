// Global parameter set: every public scalar of the scheme plus a
// machine-checkable constraint report.  setup() derives a full set from
// (lambda_desk, N) by fixed-point iteration over the two prime moduli.

#ifndef LTS_PARAMS_HPP
#define LTS_PARAMS_HPP

#include <string>

#include "lts/common.hpp"

namespace lts {

struct ParamSet {
  // Desk security knob and group shape.
  u64 lambda_desk = 0;
  u64 n = 0;        // lattice dimension
  u64 N = 0;        // max group size = 2^ell - 1
  u64 ell = 0;      // identifier bit length

  // Moduli.
  u64 q = 0;        // ZK / certificate modulus (prime)
  u64 q_prime = 0;  // scheme modulus (prime, q_prime < q)

  // Dimensions.
  u64 m_F = 0;      // SIS one-way function width:   n*ceil(log q') + lambda
  u64 m_B = 0;      // IBE / pseudonym width:      2*n*ceil(log q') + lambda
  u64 m_1 = 0;      // certificate signature left width
  u64 m_2 = 0;      // certificate signature right width = n*ceil(log q)
  u64 m_M = 0;      // tracing tag rows = 3n

  // Gaussian widths and norm bounds (certificate layer, modulus q).
  double sigma_sign = 0;
  double sigma_com = 0;
  double sigma_verif = 0;
  u64 beta_1 = 0;
  u64 beta_2 = 0;

  // GPV layer (modulus q').
  double alpha_gpv = 0;   // error rate; error width is alpha_gpv * q'
  double sigma_gpv = 0;
  u64 B_gpv = 0;          // infinity bound on IBE error entries
  u64 B_lwe = 0;          // infinity bound on join/tag errors

  // ZK layer (Appendix C; sigma_2 / M_rej are for the Sign statement, the
  // Claim statement carries its own in its CRS).
  u64 l1 = 0, l2 = 0;
  double sigma_1 = 0;
  double sigma_2 = 0;
  u64 p = 0;
  u64 kappa = 0;
  double M_rej = 0;

  // One-time signature verification key bit length.
  u64 ots_vklen = 256;

  u64 log2_q() const { return ceil_log2(q); }
  u64 log2_q_prime() const { return ceil_log2(q_prime); }

  bytes encode() const;
  static ParamSet decode(const bytes &data);
  bool operator==(const ParamSet &) const = default;
};

struct ConstraintRow {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  bool pass = false;
  bool informational = false;  // recorded, not counted toward all_pass
};

struct ConstraintReport {
  std::vector<ConstraintRow> rows;
  bool all_pass() const {
    for (const auto &r : rows)
      if (!r.informational && !r.pass) return false;
    return true;
  }
  std::string to_string() const;
};

// Evaluates every ParamSet invariant plus the modulus lower bounds from
// relations::q_lower_bounds.  Report-only; never throws on failure.
ConstraintReport validate_params(const ParamSet &pp);

// Derives a validated ParamSet.  N must equal 2^ell - 1 for some ell >= 1.
// Throws SamplingError if no prime below the 2^62 cap satisfies the bounds.
ParamSet setup(u64 lambda_desk, u64 N);

// The acceptance-criteria preset: setup(16, 7).
ParamSet setup_desk();

}  // namespace lts

#endif  // LTS_PARAMS_HPP
