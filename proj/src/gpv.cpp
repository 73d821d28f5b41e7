#include "lts/gpv.hpp"

#include "lts/oracles.hpp"
#include "lts/serial.hpp"
#include "lts/xof.hpp"

namespace lts {

namespace {

// Seed for deterministic extraction: SHAKE256("IBEEXT" || osk_seed || vk).
bytes extraction_seed(const bytes &osk_seed, const bytes &vk) {
  Encoder enc;
  enc.put_raw("IBEEXT", 6);
  enc.put(osk_seed);
  enc.put(vk);
  Xof x;
  const bytes &in = enc.data();
  x.update(in.data(), in.size());
  return x.squeeze(32);
}

// B_gpv-truncated error entry at width alpha_gpv * q'.
i64 sample_error_entry(double width, u64 bound, RngHandle &rng) {
  for (;;) {
    i64 e = sample_dgauss_z(width, rng);
    if (std::abs(e) <= i64(bound)) return e;
  }
}

}  // namespace

ZqVector ibe_identity(const bytes &vk, const ParamSet &pp) {
  return ro_zq_vector(oracle_tag::kGpv, vk, pp.n, pp.q_prime);
}

IbeUserKey ibe_extract(const ZqMatrix &B, const GTrapdoor &S_B,
                       const bytes &osk_seed, const bytes &vk,
                       const ParamSet &pp) {
  ZqVector v = ibe_identity(vk, pp);
  RngHandle rng(extraction_seed(osk_seed, vk));
  ZqMatrix Bbar = left_block(B, pp.m_B - pp.n * pp.log2_q_prime());
  IbeUserKey key;
  key.e_vk = sample_d(Bbar, S_B, 1, v, pp.sigma_gpv, rng);
  return key;
}

IbeEncryption ibe_encrypt(const ZqMatrix &B, const bytes &vk, u64 id,
                          const ParamSet &pp, RngHandle &rng) {
  if (id > pp.N) throw DimensionError("ibe_encrypt: identity out of range");
  u64 qp = pp.q_prime;
  ZqVector v = ibe_identity(vk, pp);
  double width = pp.alpha_gpv * double(qp);

  IbeEncryption out;
  out.r = uniform_vector(qp, pp.n, rng);
  out.e_c = IntVector(pp.m_B + 1, 0);
  i64 maxabs = 0;
  for (size_t i = 0; i <= pp.m_B; ++i) {
    out.e_c[i] = sample_error_entry(width, pp.B_gpv, rng);
    maxabs = std::max(maxabs, std::abs(out.e_c[i]));
  }
  out.e_c.bound = maxabs;

  // c_i = <column i of B, r> + e_i for i < m_B; last row uses v and carries
  // the payload Delta * id.
  out.ct.c = ZqVector(qp, pp.m_B + 1);
  for (size_t i = 0; i < pp.m_B; ++i) {
    i128 acc = out.e_c[i];
    for (size_t r = 0; r < pp.n; ++r)
      acc += i128(B.at(r, i)) * out.r[r];
    out.ct.c[i] = reduce_i128(acc, qp);
  }
  i128 acc = i128(out.e_c[pp.m_B]) + i128(ibe_delta(pp)) * id;
  for (size_t r = 0; r < pp.n; ++r) acc += i128(v[r]) * out.r[r];
  out.ct.c[pp.m_B] = reduce_i128(acc, qp);
  return out;
}

std::optional<u64> ibe_decrypt(const IbeCiphertext &ct, const IbeUserKey &key,
                               const ParamSet &pp) {
  u64 qp = pp.q_prime;
  if (ct.c.size() != pp.m_B + 1 || ct.c.q != qp ||
      key.e_vk.size() != pp.m_B)
    throw DimensionError("ibe_decrypt: dimension mismatch");
  i128 acc = ct.c[pp.m_B];
  for (size_t i = 0; i < pp.m_B; ++i)
    acc -= i128(key.e_vk[i]) * ct.c[i];
  i64 val = centered_rep(reduce_i128(acc, qp), qp);

  // Nearest multiple of Delta, ties toward zero.
  i64 delta = i64(ibe_delta(pp));
  i64 quot = val / delta;
  i64 rem = val % delta;
  if (2 * std::abs(rem) > delta) quot += (val >= 0 ? 1 : -1);
  if (quot < 0 || quot > i64(pp.N)) return std::nullopt;
  return u64(quot);
}

}  // namespace lts
