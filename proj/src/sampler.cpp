#include "lts/sampler.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <memory>

#include "lts/gadget.hpp"

namespace lts {

double gauss_width_floor(size_t dim) {
  // sqrt(ln(2 * dim / eps) / pi) with eps = 2^-40.
  double ln_arg = std::log(2.0 * double(dim)) + 40.0 * std::log(2.0);
  return std::sqrt(ln_arg / M_PI);
}

// ---------------------------------------------------------------------------
// Base integer Gaussian.

namespace {

constexpr double kCdtMaxSigma = 16384.0;

struct CdtTable {
  std::vector<u128> cum;  // cumulative over |x| = 0..tmax, scaled to 2^96
};

const CdtTable &cdt_for(double sigma) {
  static thread_local std::map<u64, std::unique_ptr<CdtTable>> cache;
  u64 key;
  static_assert(sizeof(double) == sizeof(u64));
  std::memcpy(&key, &sigma, 8);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  auto tbl = std::make_unique<CdtTable>();
  i64 tmax = static_cast<i64>(std::ceil(kGaussTail * sigma));
  std::vector<long double> w(tmax + 1);
  long double total = 0;
  for (i64 x = 0; x <= tmax; ++x) {
    long double r = expl(-M_PIl * (long double)(x) * x / (sigma * sigma));
    w[x] = (x == 0) ? r : 2 * r;  // magnitude weight; sign drawn separately
    total += w[x];
  }
  const long double scale = powl(2.0L, 96);
  tbl->cum.resize(tmax + 1);
  long double acc = 0;
  for (i64 x = 0; x <= tmax; ++x) {
    acc += w[x];
    long double frac = acc / total;
    tbl->cum[x] = (x == tmax) ? (u128(1) << 96)
                              : static_cast<u128>(frac * scale);
  }
  const CdtTable &ref = *tbl;
  cache.emplace(key, std::move(tbl));
  return ref;
}

u128 random_u96(RngHandle &rng) {
  u8 buf[12];
  rng.fill(buf, 12);
  u128 v = 0;
  for (int i = 0; i < 12; ++i) v |= u128(buf[i]) << (8 * i);
  return v;
}

i64 sample_cdt(double sigma, RngHandle &rng) {
  const CdtTable &t = cdt_for(sigma);
  u128 r = random_u96(rng);
  // Binary search for the smallest x with r < cum[x].
  size_t lo = 0, hi = t.cum.size() - 1;
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (r < t.cum[mid])
      hi = mid;
    else
      lo = mid + 1;
  }
  i64 mag = static_cast<i64>(lo);
  if (mag == 0) return 0;
  return (rng.next_u64() & 1) ? mag : -mag;
}

// Exact-rate rejection from the uniform envelope on [c - 12s, c + 12s].
i64 sample_rejection(double sigma, double c, RngHandle &rng) {
  i64 lo = static_cast<i64>(std::ceil(c - kGaussTail * sigma));
  i64 hi = static_cast<i64>(std::floor(c + kGaussTail * sigma));
  u64 span = static_cast<u64>(hi - lo + 1);
  for (;;) {
    i64 x = lo + static_cast<i64>(rng.below(span));
    double d = (double(x) - c);
    double p = std::exp(-M_PI * d * d / (sigma * sigma));
    // Accept iff u < p with u uniform in [0,1) at 64-bit resolution.
    if (rng.next_u64() < static_cast<u64>(p * 18446744073709551615.0))
      return x;
  }
}

}  // namespace

i64 sample_dgauss_z(double sigma, RngHandle &rng) {
  if (!(sigma > 0)) throw SamplingError("dgauss: nonpositive width");
  if (sigma <= kCdtMaxSigma) return sample_cdt(sigma, rng);
  return sample_rejection(sigma, 0.0, rng);
}

i64 sample_dgauss_z_centered(double sigma, double c, RngHandle &rng) {
  if (!(sigma > 0)) throw SamplingError("dgauss: nonpositive width");
  return sample_rejection(sigma, c, rng);
}

IntVector sample_dgauss_vec(double sigma, size_t dim, RngHandle &rng) {
  IntVector out(dim, static_cast<i64>(std::ceil(kGaussTail * sigma)));
  for (size_t i = 0; i < dim; ++i) out[i] = sample_dgauss_z(sigma, rng);
  return out;
}

// ---------------------------------------------------------------------------
// Gadget coset sampling (Klein over Lambda_q^perp(g), g = (1, 2, ..., 2^{k-1})).

namespace {

struct GadgetBasis {
  size_t k = 0;
  std::vector<std::vector<i64>> b;       // basis columns
  std::vector<std::vector<double>> gso;  // Gram-Schmidt vectors
  std::vector<double> gso_norm_sq;
};

const GadgetBasis &gadget_basis_for(u64 q) {
  static thread_local std::map<u64, std::unique_ptr<GadgetBasis>> cache;
  auto it = cache.find(q);
  if (it != cache.end()) return *it->second;

  auto gb = std::make_unique<GadgetBasis>();
  size_t k = ceil_log2(q);
  gb->k = k;
  gb->b.assign(k, std::vector<i64>(k, 0));
  // Columns 2e_i - e_{i+1} plus the binary expansion of q: both satisfy
  // <g, b> = 0 over Z resp. = q, so all columns lie in Lambda^perp_q(g),
  // and the determinant is q, so they generate it.
  for (size_t i = 0; i + 1 < k; ++i) {
    gb->b[i][i] = 2;
    gb->b[i][i + 1] = -1;
  }
  for (size_t j = 0; j < k; ++j) gb->b[k - 1][j] = (q >> j) & 1;

  gb->gso.assign(k, std::vector<double>(k, 0.0));
  gb->gso_norm_sq.assign(k, 0.0);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) gb->gso[i][j] = double(gb->b[i][j]);
    for (size_t prev = 0; prev < i; ++prev) {
      double dot = 0;
      for (size_t j = 0; j < k; ++j) dot += double(gb->b[i][j]) * gb->gso[prev][j];
      double mu = dot / gb->gso_norm_sq[prev];
      for (size_t j = 0; j < k; ++j) gb->gso[i][j] -= mu * gb->gso[prev][j];
    }
    double ns = 0;
    for (size_t j = 0; j < k; ++j) ns += gb->gso[i][j] * gb->gso[i][j];
    gb->gso_norm_sq[i] = ns;
  }
  const GadgetBasis &ref = *gb;
  cache.emplace(q, std::move(gb));
  return ref;
}

// Samples z in Z^k with <g, z> = v mod q, z near D_{sigma_g} over the coset.
void sample_gadget_coset(u64 q, u64 v, double sigma_g, RngHandle &rng,
                         i64 *z_out) {
  const GadgetBasis &gb = gadget_basis_for(q);
  size_t k = gb.k;
  // Particular solution: plain binary digits of the canonical representative.
  std::vector<i64> z0(k);
  for (size_t j = 0; j < k; ++j) z0[j] = (v >> j) & 1;
  // Klein: lattice point near -z0, iterating over GSO from the back.
  std::vector<double> c(k);
  for (size_t j = 0; j < k; ++j) c[j] = -double(z0[j]);
  std::vector<i64> coeff(k);
  for (size_t i = k; i-- > 0;) {
    double dot = 0;
    for (size_t j = 0; j < k; ++j) dot += c[j] * gb.gso[i][j];
    double center = dot / gb.gso_norm_sq[i];
    double sigma_i = sigma_g / std::sqrt(gb.gso_norm_sq[i]);
    coeff[i] = sample_dgauss_z_centered(sigma_i, center, rng);
    for (size_t j = 0; j < k; ++j) c[j] -= double(coeff[i]) * gb.b[i][j];
  }
  for (size_t j = 0; j < k; ++j) {
    i64 w = 0;
    for (size_t i = 0; i < k; ++i) w += coeff[i] * gb.b[i][j];
    z_out[j] = z0[j] + w;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Trapdoor generation.

void trapdoor_gen_binary(size_t n, size_t m, u64 q, RngHandle &rng,
                         ZqMatrix &B_out, GTrapdoor &S_out) {
  size_t k = ceil_log2(q);
  size_t w = n * k;
  if (m < 2 * w) throw DimensionError("trapdoor: m < 2 n ceil(log q)");
  size_t mbar = m - w;
  ZqMatrix G = gadget_matrix(n, q, w);
  for (int attempt = 0; attempt < 64; ++attempt) {
    ZqMatrix Bbar = uniform_matrix(q, n, mbar, rng);
    if (rank_mod(Bbar) != n) continue;  // restart if Bbar not full-rank
    IntMatrix S(mbar, w);
    for (auto &e : S.a) e = static_cast<i64>(rng.next_u64() & 1);
    B_out = ZqMatrix(q, n, m);
    // B = (Bbar | G - Bbar * S)
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < mbar; ++c) B_out.at(r, c) = Bbar.at(r, c);
    for (size_t c = 0; c < w; ++c) {
      for (size_t r = 0; r < n; ++r) {
        u128 acc = 0;
        for (size_t i = 0; i < mbar; ++i)
          acc += u128(Bbar.at(r, i)) * u64(S.at(i, c));
        B_out.at(r, mbar + c) =
            sub_mod(G.at(r, c), static_cast<u64>(acc % q), q);
      }
    }
    S_out.R = std::move(S);
    S_out.tag_id = 1;
    S_out.ternary = false;
    return;
  }
  throw SamplingError("trapdoor: 64 rank failures (q too small?)");
}

void trapdoor_gen_ternary(size_t n, size_t m1, size_t m2, u64 q,
                          RngHandle &rng, ZqMatrix &A_out, ZqMatrix &Aprime_out,
                          GTrapdoor &R_out) {
  if (m2 != n * ceil_log2(q))
    throw DimensionError("trapdoor: m2 != n ceil(log q)");
  A_out = uniform_matrix(q, n, m1, rng);
  IntMatrix R(m1, m2);
  for (auto &e : R.a) e = static_cast<i64>(rng.below(3)) - 1;
  Aprime_out = ZqMatrix(q, n, m2);
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < m2; ++c) {
      i128 acc = 0;
      for (size_t i = 0; i < m1; ++i)
        acc += i128(A_out.at(r, i)) * R.at(i, c);
      Aprime_out.at(r, c) = neg_mod(reduce_i128(acc, q), q);
    }
  }
  R_out.R = std::move(R);
  R_out.tag_id = 0;  // valid for any nonzero tag
  R_out.ternary = true;
}

double trapdoor_quality(const GTrapdoor &R) {
  double best = 0;
  for (size_t c = 0; c < R.R.cols; ++c) {
    double s = 1.0;  // the identity row of (R; I)
    for (size_t r = 0; r < R.R.rows; ++r)
      s += double(R.R.at(r, c)) * double(R.R.at(r, c));
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

IntVector sample_d(const ZqMatrix &A, const GTrapdoor &R, u64 h_tag,
                   const ZqVector &u, double sigma, RngHandle &rng) {
  u64 q = A.q;
  if (u.q != q) throw DimensionError("sample_d: mixed moduli");
  size_t n = A.rows, m = A.cols;
  size_t k = ceil_log2(q);
  size_t w = n * k;
  if (R.R.rows != m || R.R.cols != w)
    throw DimensionError("sample_d: trapdoor shape");
  if (u.size() != n) throw DimensionError("sample_d: syndrome length");
  if (h_tag % q == 0) throw SamplingError("sample_d: tag not invertible");

  double quality = trapdoor_quality(R);
  double c_floor = gauss_width_floor(m + w);
  if (sigma < c_floor * quality)
    throw SamplingError("sample_d: width below validity floor");
  double sigma_g = std::sqrt(5.0) * c_floor;
  double pert_var = sigma * sigma - sigma_g * sigma_g * quality * quality;
  if (pert_var <= 0)
    throw SamplingError("sample_d: no perturbation margin at this width");
  double sigma_p = std::sqrt(pert_var);

  // Stage 1: spherical perturbation.
  IntVector p = sample_dgauss_vec(sigma_p, m + w, rng);

  // Syndrome of the perturbation: Afull * p = A*(p1 - R*p2) + h*(G*p2).
  std::vector<i64> rp2(m, 0);
  for (size_t r = 0; r < m; ++r) {
    i64 acc = 0;
    for (size_t c = 0; c < w; ++c) acc += R.R.at(r, c) * p[m + c];
    rp2[r] = acc;
  }
  ZqVector syn(q, n);
  u64 h = h_tag % q;
  for (size_t r = 0; r < n; ++r) {
    i128 acc = 0;
    for (size_t c = 0; c < m; ++c)
      acc += i128(A.at(r, c)) * (i128(p[c]) - rp2[c]);
    u64 lin = reduce_i128(acc, q);
    i128 acc2 = 0;
    for (size_t j = 0; j < k; ++j)
      acc2 += i128(i64(u64(1) << j)) * p[m + r * k + j];
    u64 gpart = reduce_i128(acc2, q);
    syn[r] = add_mod(lin, mul_mod(h, gpart, q), q);
  }

  // Target gadget syndrome: v = H^{-1} (u - Afull p) mod q.
  u64 hinv = inv_mod(h, q);
  std::vector<i64> z(w);
  for (size_t r = 0; r < n; ++r) {
    u64 target = mul_mod(hinv, sub_mod(u[r], syn[r], q), q);
    sample_gadget_coset(q, target, sigma_g, rng, &z[r * k]);
  }

  // Output v = p + (R z; z).
  IntVector out(m + w, 0);
  i64 maxabs = 0;
  for (size_t r = 0; r < m; ++r) {
    i64 acc = 0;
    for (size_t c = 0; c < w; ++c) acc += R.R.at(r, c) * z[c];
    out[r] = p[r] + acc;
    maxabs = std::max(maxabs, std::abs(out[r]));
  }
  for (size_t c = 0; c < w; ++c) {
    out[m + c] = p[m + c] + z[c];
    maxabs = std::max(maxabs, std::abs(out[m + c]));
  }
  out.bound = maxabs;
  return out;
}

// ---------------------------------------------------------------------------
// Kernel basis for Reveal.

namespace {

inline u64 mulP(u64 a, u64 b) { return static_cast<u64>(u128(a) * b % kRankPrime); }

// Incremental echelon form mod kRankPrime.  Returns true (and stores the
// reduced column) if `col` is independent of everything accepted so far.
struct IncrementalRank {
  size_t dim;
  std::vector<std::vector<u64>> reduced;  // echelon columns
  std::vector<size_t> pivot;              // pivot row per echelon column

  explicit IncrementalRank(size_t d) : dim(d) {}

  bool try_add(const std::vector<i64> &col) {
    std::vector<u64> v(dim);
    for (size_t i = 0; i < dim; ++i) {
      i64 e = col[i] % static_cast<i64>(kRankPrime);
      v[i] = e < 0 ? static_cast<u64>(e + static_cast<i64>(kRankPrime))
                   : static_cast<u64>(e);
    }
    for (size_t j = 0; j < reduced.size(); ++j) {
      u64 f = v[pivot[j]];
      if (f == 0) continue;
      for (size_t i = 0; i < dim; ++i) {
        u64 sub = mulP(f, reduced[j][i]);
        v[i] = v[i] >= sub ? v[i] - sub : v[i] + kRankPrime - sub;
      }
    }
    size_t pv = dim;
    for (size_t i = 0; i < dim; ++i)
      if (v[i] != 0) {
        pv = i;
        break;
      }
    if (pv == dim) return false;
    u64 inv = pow_mod(v[pv], kRankPrime - 2, kRankPrime);
    for (size_t i = 0; i < dim; ++i) v[i] = mulP(v[i], inv);
    reduced.push_back(std::move(v));
    pivot.push_back(pv);
    return true;
  }
};

}  // namespace

IntMatrix sample_kernel_basis(const ZqMatrix &B, const GTrapdoor &S,
                              double sigma_gpv, RngHandle &rng) {
  size_t n = B.rows;
  // B is the left block; sample_d outputs span the full width m_B.
  size_t mB = B.cols + n * ceil_log2(B.q);
  ZqVector zero(B.q, n);
  IntMatrix out(mB, mB);
  IncrementalRank rank(mB);
  size_t accepted = 0;
  u128 norm_cap = static_cast<u128>(sigma_gpv * sigma_gpv * double(mB));
  size_t budget = 4 * mB * mB;
  for (size_t draws = 0; accepted < mB; ++draws) {
    if (draws >= budget)
      throw SamplingError("kernel basis: independence budget exhausted");
    IntVector s = sample_d(B, S, 1, zero, sigma_gpv, rng);
    // Clamp per-column norm: certifies |s^T e| <= sigma sqrt(mB) * ||e||_2
    // < q'/2 in Reveal (see parameter sizing).
    if (l2_norm_sq(s) > norm_cap) continue;
    std::vector<i64> col(s.v.begin(), s.v.end());
    if (!rank.try_add(col)) continue;
    for (size_t i = 0; i < mB; ++i) out.at(i, accepted) = s[i];
    ++accepted;
  }
  return out;
}

double rejection_prob(const IntVector &v, const IntVector &z, double sigma2,
                      double M_rej) {
  if (v.size() != z.size()) throw DimensionError("rejection_prob: dims");
  long double vv = 0, zv = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    vv += (long double)(v[i]) * v[i];
    zv += (long double)(z[i]) * v[i];
  }
  long double t = M_PIl * (vv - 2 * zv) / ((long double)(sigma2) * sigma2);
  long double p = expl(t) / (long double)(M_rej);
  if (p > 1) return 1.0;
  if (p < 0) return 0.0;
  return static_cast<double>(p);
}

}  // namespace lts
