// Discrete Gaussian sampling, gadget trapdoors, Prop.-1-style preimage
// sampling, kernel bases for Reveal, and the rejection-sampling probability
// of the Sigma-protocol.
//
// Gaussian convention: rho_sigma(x) = exp(-pi x^2 / sigma^2), so the
// standard deviation of D_{Z,sigma} is roughly sigma / sqrt(2 pi).

#ifndef LTS_SAMPLER_HPP
#define LTS_SAMPLER_HPP

#include "lts/rng.hpp"
#include "lts/zq.hpp"

namespace lts {

// Small signed matrix (trapdoors, kernel bases); row-major.
struct IntMatrix {
  size_t rows = 0, cols = 0;
  std::vector<i64> a;

  IntMatrix() = default;
  IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}
  i64 &at(size_t r, size_t c) { return a[r * cols + c]; }
  i64 at(size_t r, size_t c) const { return a[r * cols + c]; }
};

// G-trapdoor: A * (R; I) = H * G mod q for the owning matrix.
struct GTrapdoor {
  IntMatrix R;        // (m - w) x w, entries in {0,1} or {-1,0,1}
  u64 tag_id = 1;     // the scalar tag H = tag_id * I_n it was generated for
  bool ternary = false;
};

// Truncation radius: samples are conditioned on |x - c| <= 12 sigma
// (tail mass < 2^-100).
inline constexpr double kGaussTail = 12.0;

// First `cols` columns of M: the left block handed to sample_d / kernel
// sampling when M was produced by one of the trapdoor generators.
inline ZqMatrix left_block(const ZqMatrix &M, size_t cols) {
  ZqMatrix out(M.q, M.rows, cols);
  for (size_t r = 0; r < M.rows; ++r)
    for (size_t c = 0; c < cols; ++c) out.at(r, c) = M.at(r, c);
  return out;
}

// omega(sqrt(log n)) stand-in: sqrt(ln(2 * dim / eps) / pi), eps = 2^-40.
double gauss_width_floor(size_t dim);

// D_{Z,sigma} centered at 0.  CDT inversion with 128-bit fixed-point
// cumulative table for sigma <= 2^14; exact-rate rejection sampling from
// the uniform envelope for larger widths.
i64 sample_dgauss_z(double sigma, RngHandle &rng);
// D_{Z,sigma} centered at arbitrary real c (rejection; used by Klein).
i64 sample_dgauss_z_centered(double sigma, double c, RngHandle &rng);

IntVector sample_dgauss_vec(double sigma, size_t dim, RngHandle &rng);

// KeyGen step 2: B = (Bbar | G_n - Bbar*S), S binary, Bbar full rank.
// Throws SamplingError after 64 consecutive rank failures.
void trapdoor_gen_binary(size_t n, size_t m, u64 q, RngHandle &rng,
                         ZqMatrix &B_out, GTrapdoor &S_out);

// KeyGen step 1: A uniform n x m1, R ternary, A' = -A*R mod q.
void trapdoor_gen_ternary(size_t n, size_t m1, size_t m2, u64 q,
                          RngHandle &rng, ZqMatrix &A_out, ZqMatrix &Aprime_out,
                          GTrapdoor &R_out);

// Prop. 1 SampleD over (A | H*G - A*R) with scalar tag H = h_tag * I_n
// (`A` is the left block only; the full matrix is reconstructed through R):
// returns v with (A | H*G - A*R) * v = u mod q exactly, v near D_sigma.
// Realization: spherical perturbation + Klein sampling over the gadget
// coset lattice, corrected through R.
IntVector sample_d(const ZqMatrix &A, const GTrapdoor &R, u64 h_tag,
                   const ZqVector &u, double sigma, RngHandle &rng);

// Spectral-style quality measure used for width floors: max column l2 norm
// of (R; I).
double trapdoor_quality(const GTrapdoor &R);

// Reveal step 1: m_B rationally independent columns with B * s_i = 0 mod q'.
// `B` is the left block Bbar (as in sample_d); columns span the full width.
// Columns are resampled until ||s_i||_2 <= sigma_gpv * sqrt(m_B), which
// certifies the Reveal lift (see q' sizing).  Independence certified by
// full rank mod the prime 2^61 - 1.
IntMatrix sample_kernel_basis(const ZqMatrix &B, const GTrapdoor &S,
                              double sigma_gpv, RngHandle &rng);

// Appendix C: p(v, z) = min(1, D_{sigma2}(z) / (M * D_{sigma2,v}(z)))
//           = min(1, exp(pi (||v||^2 - 2<z,v>) / sigma2^2) / M).
double rejection_prob(const IntVector &v, const IntVector &z, double sigma2,
                      double M_rej);

// The prime used for rational-rank certificates.
inline constexpr u64 kRankPrime = (u64(1) << 61) - 1;

}  // namespace lts

#endif  // LTS_SAMPLER_HPP
