#include "lts/zkq.hpp"

#include <cmath>

#include "lts/sampler.hpp"

namespace lts {

bytes QuadraticStatement::encode() const {
  Encoder enc;
  enc.put(A);
  enc.put(y);
  enc.put_tagged_u64(S.size());
  for (const auto &tr : S) {
    enc.put_u32(tr.h);
    enc.put_u32(tr.i);
    enc.put_u32(tr.j);
  }
  return enc.take();
}

QuadraticStatement QuadraticStatement::decode(const bytes &data) {
  Decoder dec(data);
  QuadraticStatement stmt;
  stmt.A = dec.get_zq_sparse();
  stmt.y = dec.get_zq_vector();
  u64 ns = dec.get_tagged_u64();
  stmt.S.resize(ns);
  for (auto &tr : stmt.S) {
    tr.h = dec.get_u32();
    tr.i = dec.get_u32();
    tr.j = dec.get_u32();
    if (tr.h >= stmt.A.cols || tr.i >= stmt.A.cols || tr.j >= stmt.A.cols)
      throw CodecError("statement: triple index out of range");
  }
  dec.expect_done();
  return stmt;
}

std::array<u8, 32> QuadraticStatement::fingerprint() const {
  return ::lts::fingerprint(encode());
}

bool witness_check(const QuadraticStatement &stmt, const ZqVector &x) {
  if (x.size() != stmt.A.cols || x.q != stmt.q())
    throw DimensionError("witness_check: dimension mismatch");
  u64 q = stmt.q();
  ZqVector ax = mat_vec(stmt.A, x);
  for (size_t i = 0; i < ax.size(); ++i)
    if (ax[i] != stmt.y[i]) return false;
  for (const auto &tr : stmt.S)
    if (x[tr.h] != mul_mod(x[tr.i], x[tr.j], q)) return false;
  return true;
}

void SigmaResponse::encode_into(Encoder &enc) const {
  enc.put(c1);
  enc.put(c3);
  enc.put_raw(rho.rho.data(), rho.rho.size());
  enc.put(z0);
  enc.put(z1);
  enc.put(z2);
}

SigmaResponse SigmaResponse::decode_from(Decoder &dec) {
  SigmaResponse r;
  r.c1 = dec.get_zq_vector();
  r.c3 = dec.get_zq_vector();
  dec.get_raw(r.rho.rho.data(), r.rho.rho.size());
  r.z0 = dec.get_zq_vector();
  r.z1 = dec.get_int_vector();
  r.z2 = dec.get_int_vector();
  return r;
}

namespace {

bytes aux_payload(const ZqVector &t, const ZqVector &c1, const ZqVector &c2,
                  const ZqVector &c3, const ZqVector &c4) {
  Encoder enc;
  enc.put(t);
  enc.put(c1);
  enc.put(c2);
  enc.put(c3);
  enc.put(c4);
  return enc.take();
}

// z = ch * u + sign * w over Z.
IntVector lincomb(i64 ch, const IntVector &u, i64 sign, const IntVector &w) {
  IntVector out(u.size(), 0);
  i64 maxabs = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    out[i] = ch * u[i] + sign * w[i];
    maxabs = std::max(maxabs, std::abs(out[i]));
  }
  out.bound = maxabs;
  return out;
}

}  // namespace

double sigma_norm_bound(const BdlopCrs &crs, size_t mid_len) {
  double dim = double(crs.B1.l1 + crs.B1.l2 + mid_len);
  return 2.0 * std::sqrt(dim) *
         (crs.sigma_2 + double(crs.p) * crs.sigma_1);
}

ProverState sigma_commit(const BdlopCrs &crs, const QuadraticStatement &stmt,
                         const ZqVector &wit, RngHandle &rng) {
  if (!witness_check(stmt, wit))
    throw DimensionError("sigma_commit: witness does not satisfy statement");
  u64 q = stmt.q();
  size_t np = stmt.n_prime(), ns = stmt.S.size();
  if (crs.B1.mid != np || crs.B2.mid != ns || crs.B1.q != q)
    throw DimensionError("sigma_commit: crs does not match statement");

  ProverState st;
  st.x = wit;
  st.r = uniform_vector(q, np, rng);
  st.s1 = sample_dgauss_vec(crs.sigma_1, crs.B1.rand_len(), rng);
  st.s2 = sample_dgauss_vec(crs.sigma_2, crs.B1.rand_len(), rng);
  st.s3 = sample_dgauss_vec(crs.sigma_1, crs.B2.rand_len(), rng);
  st.s4 = sample_dgauss_vec(crs.sigma_2, crs.B2.rand_len(), rng);
  st.t = mat_vec(stmt.A, st.r);

  st.a = ZqVector(q, ns);
  st.b = ZqVector(q, ns);
  for (size_t k = 0; k < ns; ++k) {
    const auto &tr = stmt.S[k];
    // Cross terms chosen so that d = ch*z0[h] - z0[i]*z0[j] = -ch*a + b.
    u64 cross = add_mod(mul_mod(st.x[tr.i], st.r[tr.j], q),
                        mul_mod(st.x[tr.j], st.r[tr.i], q), q);
    st.a[k] = sub_mod(cross, st.r[tr.h], q);
    st.b[k] = neg_mod(mul_mod(st.r[tr.i], st.r[tr.j], q), q);
  }

  st.c1 = bdlop_commit(crs.B1, st.s1, st.x);
  st.c2 = bdlop_commit(crs.B1, st.s2, st.r);
  st.c3 = bdlop_commit(crs.B2, st.s3, st.a);
  st.c4 = bdlop_commit(crs.B2, st.s4, st.b);

  auto [com, opening] =
      aux_commit(aux_payload(st.t, st.c1, st.c2, st.c3, st.c4), rng);
  st.com_aux = com;
  st.rho = opening;
  return st;
}

std::optional<SigmaResponse> sigma_respond(const BdlopCrs &crs,
                                           const ProverState &state,
                                           i64 challenge, RngHandle &rng) {
  if (std::abs(challenge) > i64(crs.p))
    throw DimensionError("sigma_respond: challenge out of range");
  u64 q = state.x.q;
  size_t np = state.x.size();

  ZqVector z0(q, np);
  for (size_t i = 0; i < np; ++i)
    z0[i] = reduce_i128(i128(challenge) * state.x[i] + state.r[i], q);

  IntVector z1 = lincomb(challenge, state.s1, +1, state.s2);
  IntVector z2 = lincomb(challenge, state.s3, -1, state.s4);

  // Rejection on the shift (ch*s1 | ch*s3) against the sample (z1 | z2).
  size_t total = z1.size() + z2.size();
  IntVector shift(total, 0), sample(total, 0);
  for (size_t i = 0; i < z1.size(); ++i) {
    shift[i] = challenge * state.s1[i];
    sample[i] = z1[i];
  }
  for (size_t i = 0; i < z2.size(); ++i) {
    shift[z1.size() + i] = challenge * state.s3[i];
    sample[z1.size() + i] = z2[i];
  }
  double accept = rejection_prob(shift, sample, crs.sigma_2, crs.M_rej);
  if (rng.next_u64() >= static_cast<u64>(accept * 18446744073709551615.0))
    return std::nullopt;

  SigmaResponse rsp;
  rsp.c1 = state.c1;
  rsp.c3 = state.c3;
  rsp.rho = state.rho;
  rsp.z0 = std::move(z0);
  rsp.z1 = std::move(z1);
  rsp.z2 = std::move(z2);
  return rsp;
}

bool sigma_verify(const BdlopCrs &crs, const QuadraticStatement &stmt,
                  const AuxCommitment &com_aux, i64 challenge,
                  const SigmaResponse &rsp) {
  u64 q = stmt.q();
  size_t np = stmt.n_prime(), ns = stmt.S.size();
  if (std::abs(challenge) > i64(crs.p)) return false;
  if (rsp.z0.size() != np || rsp.z0.q != q) return false;
  if (rsp.z1.size() != crs.B1.rand_len() || rsp.z2.size() != crs.B2.rand_len())
    return false;
  if (rsp.c1.size() != crs.B1.commit_len() || rsp.c1.q != q) return false;
  if (rsp.c3.size() != crs.B2.commit_len() || rsp.c3.q != q) return false;

  double b1 = sigma_norm_bound(crs, np);
  double b2 = sigma_norm_bound(crs, ns);
  if (double(l2_norm_sq(rsp.z1)) > b1 * b1) return false;
  if (double(l2_norm_sq(rsp.z2)) > b2 * b2) return false;

  // d[k] = ch*z0[h] - z0[i]*z0[j] mod q
  ZqVector d(q, ns);
  for (size_t k = 0; k < ns; ++k) {
    const auto &tr = stmt.S[k];
    i128 val = i128(challenge) * rsp.z0[tr.h];
    val -= i128(rsp.z0[tr.i]) * rsp.z0[tr.j] % q;
    d[k] = reduce_i128(val, q);
  }

  // t = A*z0 - ch*y
  ZqVector t = mat_vec(stmt.A, rsp.z0);
  for (size_t i = 0; i < t.size(); ++i)
    t[i] = reduce_i128(i128(t[i]) - i128(challenge) * stmt.y[i], q);

  // c2 = B1*z1 + (0|z0) - ch*c1
  ZqVector c2 = bdlop_commit(crs.B1, rsp.z1, rsp.z0);
  for (size_t i = 0; i < c2.size(); ++i)
    c2[i] = reduce_i128(i128(c2[i]) - i128(challenge) * rsp.c1[i], q);

  // c4 = ch*c3 - B2*z2 + (0|d)
  ZqVector b2z = bdlop_commit(crs.B2, rsp.z2, ZqVector(q, ns));
  ZqVector c4(q, crs.B2.commit_len());
  for (size_t i = 0; i < c4.size(); ++i) {
    i128 val = i128(challenge) * rsp.c3[i] - b2z[i];
    if (i >= crs.B2.l1) val += d[i - crs.B2.l1];
    c4[i] = reduce_i128(val, q);
  }

  return aux_verify(com_aux, aux_payload(t, rsp.c1, c2, rsp.c3, c4), rsp.rho);
}

std::optional<ZqVector> sigma_extract(const QuadraticStatement &stmt,
                                      i64 ch_a, const SigmaResponse &rsp_a,
                                      i64 ch_b, const SigmaResponse &rsp_b,
                                      i64 ch_c, const SigmaResponse &rsp_c) {
  u64 q = stmt.q();
  if (ch_a == ch_b || ch_a == ch_c || ch_b == ch_c)
    throw DimensionError("sigma_extract: challenges must be distinct");
  u64 dinv = inv_mod(reduce_i128(i128(ch_a) - ch_b, q), q);
  size_t np = stmt.n_prime();
  ZqVector x(q, np);
  for (size_t i = 0; i < np; ++i)
    x[i] = mul_mod(sub_mod(rsp_a.z0[i], rsp_b.z0[i], q), dinv, q);
  if (!witness_check(stmt, x)) return std::nullopt;
  // Consistency filter through the third transcript: z0_c = ch_c*x + r
  // with r = z0_a - ch_a*x.
  for (size_t i = 0; i < np; ++i) {
    u64 r = reduce_i128(i128(rsp_a.z0[i]) - i128(ch_a) * x[i], q);
    u64 want = reduce_i128(i128(ch_c) * x[i] + r, q);
    if (rsp_c.z0[i] != want) return std::nullopt;
  }
  return x;
}

}  // namespace lts
