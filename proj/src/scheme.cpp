#include "lts/scheme.hpp"

#include <cmath>

#include "lts/gadget.hpp"
#include "lts/oracles.hpp"

namespace lts {

// ---------------------------------------------------------------------------
// Serialization.

namespace {

void put_int_matrix(Encoder &enc, const IntMatrix &m) {
  enc.put_tagged_u64(m.rows);
  enc.put_tagged_u64(m.cols);
  for (i64 v : m.a) enc.put_i64(v);
}

IntMatrix get_int_matrix(Decoder &dec) {
  u64 rows = dec.get_tagged_u64();
  u64 cols = dec.get_tagged_u64();
  if (rows > (u64(1) << 20) || cols > (u64(1) << 20) ||
      rows * cols > (u64(1) << 28))
    throw CodecError("int matrix: implausible dimensions");
  IntMatrix m(rows, cols);
  for (auto &v : m.a) v = dec.get_i64();
  return m;
}

void put_trapdoor(Encoder &enc, const GTrapdoor &t) {
  put_int_matrix(enc, t.R);
  enc.put_tagged_u64(t.tag_id);
  enc.put_u8(t.ternary ? 1 : 0);
}

GTrapdoor get_trapdoor(Decoder &dec) {
  GTrapdoor t;
  t.R = get_int_matrix(dec);
  t.tag_id = dec.get_tagged_u64();
  t.ternary = dec.get_u8() != 0;
  i64 cap = t.ternary ? 1 : 1;
  for (i64 v : t.R.a)
    if (v < (t.ternary ? -cap : 0) || v > cap)
      throw CodecError("trapdoor: entry out of range");
  return t;
}

void put_tagsig(Encoder &enc, const TagSignature &s) {
  enc.put(s.v1);
  enc.put(s.v2);
}

TagSignature get_tagsig(Decoder &dec) {
  TagSignature s;
  s.v1 = dec.get_int_vector();
  s.v2 = dec.get_int_vector();
  return s;
}

}  // namespace

bytes GroupPublicKey::encode() const {
  Encoder enc;
  enc.put(pp.encode());
  tag_vk.encode_into(enc);
  enc.put(B);
  enc.put(F);
  enc.put(crs_sign.encode());
  enc.put(crs_claim.encode());
  return enc.take();
}

GroupPublicKey GroupPublicKey::decode(const bytes &data) {
  Decoder dec(data);
  GroupPublicKey gpk;
  gpk.pp = ParamSet::decode(dec.get_bytes());
  gpk.tag_vk = TagSigPublic::decode_from(dec);
  gpk.B = dec.get_zq_matrix();
  gpk.F = dec.get_zq_matrix();
  gpk.crs_sign = BdlopCrs::decode(dec.get_bytes());
  gpk.crs_claim = BdlopCrs::decode(dec.get_bytes());
  dec.expect_done();
  const ParamSet &pp = gpk.pp;
  if (gpk.B.q != pp.q_prime || gpk.B.rows != pp.n || gpk.B.cols != pp.m_B ||
      gpk.F.q != pp.q_prime || gpk.F.rows != pp.n || gpk.F.cols != pp.m_F ||
      gpk.tag_vk.A.q != pp.q || gpk.tag_vk.A.cols != pp.m_1 ||
      gpk.tag_vk.A_prime.cols != pp.m_2 ||
      gpk.tag_vk.D.cols != pp.m_B * pp.log2_q_prime() ||
      gpk.tag_vk.u.size() != pp.n)
    throw CodecError("gpk: dimensions inconsistent with parameters");
  return gpk;
}

std::array<u8, 32> GroupPublicKey::fingerprint() const {
  return ::lts::fingerprint(encode());
}

bytes GroupManagerKey::encode() const {
  Encoder enc;
  put_trapdoor(enc, R_A);
  return enc.take();
}

GroupManagerKey GroupManagerKey::decode(const bytes &data) {
  Decoder dec(data);
  GroupManagerKey k;
  k.R_A = get_trapdoor(dec);
  dec.expect_done();
  return k;
}

bytes OpeningKey::encode() const {
  Encoder enc;
  put_trapdoor(enc, S_B);
  enc.put_raw(seed.data(), seed.size());
  return enc.take();
}

OpeningKey OpeningKey::decode(const bytes &data) {
  Decoder dec(data);
  OpeningKey k;
  k.S_B = get_trapdoor(dec);
  dec.get_raw(k.seed.data(), k.seed.size());
  dec.expect_done();
  return k;
}

bytes UserSecret::encode() const {
  Encoder enc;
  enc.put(z);
  return enc.take();
}

UserSecret UserSecret::decode(const bytes &data) {
  Decoder dec(data);
  UserSecret u;
  u.z = dec.get_bit_vector();
  dec.expect_done();
  return u;
}

bytes Certificate::encode() const {
  Encoder enc;
  enc.put_tagged_u64(id);
  enc.put(y);
  put_tagsig(enc, tsig);
  return enc.take();
}

Certificate Certificate::decode(const bytes &data) {
  Decoder dec(data);
  Certificate c;
  c.id = dec.get_tagged_u64();
  c.y = dec.get_zq_vector();
  c.tsig = get_tagsig(dec);
  dec.expect_done();
  return c;
}

bytes TracingTrapdoor::encode() const {
  Encoder enc;
  enc.put(x);
  return enc.take();
}

TracingTrapdoor TracingTrapdoor::decode(const bytes &data) {
  Decoder dec(data);
  TracingTrapdoor t;
  t.x = dec.get_zq_vector();
  dec.expect_done();
  return t;
}

bytes GroupSignature::encode() const {
  Encoder enc;
  enc.put_raw(rho.data(), rho.size());
  enc.put(c);
  enc.put(t);
  enc.put(pi.encode());
  enc.put(vk);
  sig.encode_into(enc);
  return enc.take();
}

GroupSignature GroupSignature::decode(const bytes &data) {
  Decoder dec(data);
  GroupSignature s;
  dec.get_raw(s.rho.data(), s.rho.size());
  s.c = dec.get_zq_vector();
  s.t = dec.get_zq_vector();
  s.pi = NizkProof::decode(dec.get_bytes());
  s.vk = dec.get_bytes();
  s.sig = OtsSignature::decode_from(dec);
  dec.expect_done();
  return s;
}

bytes ClaimProof::encode() const {
  Encoder enc;
  enc.put(chi.encode());
  return enc.take();
}

ClaimProof ClaimProof::decode(const bytes &data) {
  Decoder dec(data);
  ClaimProof p;
  p.chi = NizkProof::decode(dec.get_bytes());
  dec.expect_done();
  return p;
}

bytes JoinRequest::encode() const {
  Encoder enc;
  enc.put(y);
  enc.put(user_vk);
  enc.put(sigma_user.encode());
  return enc.take();
}

JoinRequest JoinRequest::decode(const bytes &data) {
  Decoder dec(data);
  JoinRequest r;
  r.y = dec.get_zq_vector();
  r.user_vk = dec.get_bytes();
  r.sigma_user = UserSignature::decode(dec.get_bytes());
  dec.expect_done();
  return r;
}

bytes PendingUser::encode() const {
  Encoder enc;
  enc.put(z);
  enc.put(x);
  enc.put(e);
  enc.put(y);
  return enc.take();
}

PendingUser PendingUser::decode(const bytes &data) {
  Decoder dec(data);
  PendingUser p;
  p.z = dec.get_bit_vector();
  p.x = dec.get_zq_vector();
  p.e = dec.get_int_vector();
  p.y = dec.get_zq_vector();
  dec.expect_done();
  return p;
}

bytes JoinResponse::encode() const {
  Encoder enc;
  enc.put_tagged_u64(id);
  put_tagsig(enc, tsig);
  return enc.take();
}

JoinResponse JoinResponse::decode(const bytes &data) {
  Decoder dec(data);
  JoinResponse r;
  r.id = dec.get_tagged_u64();
  r.tsig = get_tagsig(dec);
  dec.expect_done();
  return r;
}

const RegistryEntry *Registry::find(u64 id) const {
  for (const auto &e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

bytes Registry::encode() const {
  Encoder enc;
  enc.put_tagged_u64(entries.size());
  for (const auto &e : entries) {
    enc.put_tagged_u64(e.id);
    enc.put(e.y);
    enc.put(e.user_vk);
    enc.put(e.sigma_user.encode());
    put_tagsig(enc, e.tsig);
  }
  return enc.take();
}

Registry Registry::decode(const bytes &data) {
  Decoder dec(data);
  Registry reg;
  u64 n = dec.get_tagged_u64();
  if (n > (u64(1) << 20)) throw CodecError("registry: implausible size");
  reg.entries.resize(n);
  u64 expect = 1;
  for (auto &e : reg.entries) {
    e.id = dec.get_tagged_u64();
    if (e.id != expect++) throw CodecError("registry: ids not sequential");
    e.y = dec.get_zq_vector();
    e.user_vk = dec.get_bytes();
    e.sigma_user = UserSignature::decode(dec.get_bytes());
    e.tsig = get_tagsig(dec);
  }
  dec.expect_done();
  return reg;
}

// ---------------------------------------------------------------------------
// Shared helpers.

namespace {

constexpr OracleTagPair kSignTags{oracle_tag::kSign1, oracle_tag::kSign2};
constexpr OracleTagPair kClaimTags{oracle_tag::kClaim1, oracle_tag::kClaim2};

// Join/tag error width; entries resampled until |e| <= B_lwe.
double lwe_width(const ParamSet &pp) { return double(pp.B_lwe) / 2.0; }

i64 sample_lwe_entry(const ParamSet &pp, RngHandle &rng) {
  for (;;) {
    i64 e = sample_dgauss_z(lwe_width(pp), rng);
    if (std::abs(e) <= i64(pp.B_lwe)) return e;
  }
}

IntVector sample_lwe_vec(const ParamSet &pp, size_t dim, RngHandle &rng) {
  IntVector out(dim, 0);
  i64 maxabs = 0;
  for (size_t i = 0; i < dim; ++i) {
    out[i] = sample_lwe_entry(pp, rng);
    maxabs = std::max(maxabs, std::abs(out[i]));
  }
  out.bound = maxabs;
  return out;
}

// y = B^T x + e mod q'.
ZqVector pseudonym_of(const ZqMatrix &B, const ZqVector &x,
                      const IntVector &e) {
  u64 q = B.q;
  ZqVector y(q, B.cols);
  for (size_t i = 0; i < B.cols; ++i) {
    i128 acc = e[i];
    for (size_t r = 0; r < B.rows; ++r) acc += i128(B.at(r, i)) * x[r];
    y[i] = reduce_i128(acc, q);
  }
  return y;
}

// The bytes signed by the user's ordinary signature in Join: bin(y).
bytes join_message(const ZqVector &y) {
  Encoder enc;
  enc.put(bin_decompose(y));
  return enc.take();
}

// The bytes signed by the OTS in Sign: (rho, c, t, pi).
bytes ots_message(const GroupSignature &s) {
  Encoder enc;
  enc.put_raw(s.rho.data(), s.rho.size());
  enc.put(s.c);
  enc.put(s.t);
  enc.put(s.pi.encode());
  return enc.take();
}

ZqMatrix tag_matrix(const ParamSet &pp, const std::array<u8, 32> &rho) {
  bytes in(rho.begin(), rho.end());
  return ro_zq_matrix(oracle_tag::kLwe, in, pp.m_M, pp.n, pp.q_prime);
}

bool structurally_ok(const GroupPublicKey &gpk, const GroupSignature &s) {
  const ParamSet &pp = gpk.pp;
  return s.c.q == pp.q_prime && s.c.size() == pp.m_B + 1 &&
         s.t.q == pp.q_prime && s.t.size() == pp.m_M &&
         s.vk.size() == pp.ots_vklen / 8 && s.pi.kappa == pp.kappa;
}

SokContext make_context(const BdlopCrs &crs, const bytes &message,
                        const std::array<u8, 32> &rho,
                        const QuadraticStatement &stmt) {
  SokContext ctx;
  ctx.crs_fp = crs.fingerprint();
  ctx.message = message;
  ctx.extra = bytes(rho.begin(), rho.end());
  ctx.stmt_fp = stmt.fingerprint();
  return ctx;
}

CompiledStatement sign_statement_of(const GroupPublicKey &gpk,
                                    const GroupSignature &s,
                                    SignStatementInputs *in_out = nullptr) {
  SignStatementInputs in;
  in.F = gpk.F;
  in.B = gpk.B;
  in.M_mat = tag_matrix(gpk.pp, s.rho);
  in.A = gpk.tag_vk.A;
  in.A_prime = gpk.tag_vk.A_prime;
  in.D = gpk.tag_vk.D;
  in.u = gpk.tag_vk.u;
  in.v_id = ibe_identity(s.vk, gpk.pp);
  in.c = s.c;
  in.t = s.t;
  CompiledStatement cs = assemble_sign_statement(in, gpk.pp);
  if (in_out) *in_out = std::move(in);
  return cs;
}

}  // namespace

ZqVector member_trapdoor(const GroupPublicKey &gpk, const UserSecret &usk) {
  usk.z.check_bits();
  if (usk.z.size() != gpk.pp.m_F)
    throw DimensionError("member_trapdoor: usk length");
  u64 q = gpk.pp.q_prime;
  ZqVector x(q, gpk.pp.n);
  for (size_t r = 0; r < gpk.pp.n; ++r) {
    u64 acc = 0;
    for (size_t c = 0; c < gpk.pp.m_F; ++c)
      if (usk.z[c]) acc = add_mod(acc, gpk.F.at(r, c), q);
    x[r] = acc;
  }
  return x;
}

// ---------------------------------------------------------------------------
// KeyGen.

GroupKeys keygen(const ParamSet &pp, RngHandle &rng) {
  GroupKeys ks;
  ks.gpk.pp = pp;
  ks.gpk.tag_vk = tagsig_keygen(pp, rng, ks.gsk.R_A);
  trapdoor_gen_binary(pp.n, pp.m_B, pp.q_prime, rng, ks.gpk.B, ks.osk.S_B);
  ks.gpk.F = uniform_matrix(pp.q_prime, pp.n, pp.m_F, rng);
  rng.fill(ks.osk.seed.data(), ks.osk.seed.size());

  LayoutDims sd = sign_layout_dims(pp);
  ks.gpk.crs_sign = bdlop_setup(pp.l1, pp.l2, sd.n_prime, sd.n_triples, pp.q,
                                pp.sigma_1, pp.sigma_2, pp.p, pp.M_rej, rng);
  // The Claim statement is smaller, so its CRS carries its own (tighter)
  // rejection parameters derived by the same formulas.
  LayoutDims cd = claim_layout_dims(pp);
  double lc = double(2 * pp.l1 + 2 * pp.l2 + cd.n_prime + cd.n_triples);
  double sigma_2c = 2.0 * double(pp.p) * lc * std::log(lc) * pp.sigma_1;
  double M_c = std::exp(1.0 / (std::log(lc) * std::log(lc)));
  ks.gpk.crs_claim = bdlop_setup(pp.l1, pp.l2, cd.n_prime, cd.n_triples, pp.q,
                                 pp.sigma_1, sigma_2c, pp.p, M_c, rng);
  return ks;
}

// ---------------------------------------------------------------------------
// Join.

std::pair<JoinRequest, PendingUser> join_user_request(const GroupPublicKey &gpk,
                                                      UserSigKey &user_sk,
                                                      const bytes &user_vk,
                                                      RngHandle &rng) {
  const ParamSet &pp = gpk.pp;
  PendingUser pending;
  pending.z = BitVector(pp.m_F);
  for (size_t i = 0; i < pp.m_F; ++i)
    pending.z[i] = static_cast<u8>(rng.below(2));
  UserSecret usk{pending.z};
  pending.x = member_trapdoor(gpk, usk);
  pending.e = sample_lwe_vec(pp, pp.m_B, rng);
  pending.y = pseudonym_of(gpk.B, pending.x, pending.e);

  JoinRequest req;
  req.y = pending.y;
  req.user_vk = user_vk;
  req.sigma_user = usersig_sign(user_sk, join_message(req.y));
  return {std::move(req), std::move(pending)};
}

std::optional<JoinResponse> join_gm_process(const GroupPublicKey &gpk,
                                            const GroupManagerKey &gsk,
                                            Registry &reg,
                                            const JoinRequest &req,
                                            RngHandle &rng) {
  const ParamSet &pp = gpk.pp;
  if (req.y.q != pp.q_prime || req.y.size() != pp.m_B) return std::nullopt;
  if (!usersig_verify(req.user_vk, join_message(req.y), req.sigma_user))
    return std::nullopt;
  if (reg.st() >= pp.N) return std::nullopt;  // group full
  for (const auto &e : reg.entries)
    if (e.y == req.y) return std::nullopt;  // pseudonym reuse

  JoinResponse resp;
  resp.id = reg.st() + 1;
  resp.tsig = tagsig_sign(gpk.tag_vk, gsk.R_A, pp, resp.id,
                          bin_decompose(req.y), rng);

  RegistryEntry entry;
  entry.id = resp.id;
  entry.y = req.y;
  entry.user_vk = req.user_vk;
  entry.sigma_user = req.sigma_user;
  entry.tsig = resp.tsig;
  reg.entries.push_back(std::move(entry));
  return resp;
}

std::optional<std::pair<UserSecret, Certificate>> join_user_finalize(
    const GroupPublicKey &gpk, const PendingUser &pending,
    const JoinResponse &resp) {
  if (!tagsig_verify(gpk.tag_vk, gpk.pp, resp.id, bin_decompose(pending.y),
                     resp.tsig))
    return std::nullopt;
  UserSecret usk{pending.z};
  Certificate cert;
  cert.id = resp.id;
  cert.y = pending.y;
  cert.tsig = resp.tsig;
  return std::make_pair(std::move(usk), std::move(cert));
}

// ---------------------------------------------------------------------------
// Sign / Verify.

GroupSignature sign(const GroupPublicKey &gpk, const UserSecret &usk,
                    const Certificate &cert, const bytes &message,
                    RngHandle &rng) {
  const ParamSet &pp = gpk.pp;
  if (cert.id < 1 || cert.id > pp.N)
    throw DimensionError("sign: certificate id out of range");

  // Step 2: recompute x and the join error e = y - B^T x.
  ZqVector x = member_trapdoor(gpk, usk);
  IntVector e_join(pp.m_B, 0);
  i64 maxabs = 0;
  for (size_t i = 0; i < pp.m_B; ++i) {
    i128 acc = cert.y[i];
    for (size_t r = 0; r < pp.n; ++r) acc -= i128(gpk.B.at(r, i)) * x[r];
    e_join[i] = centered_rep(reduce_i128(acc, pp.q_prime), pp.q_prime);
    maxabs = std::max(maxabs, std::abs(e_join[i]));
  }
  e_join.bound = maxabs;
  if (maxabs > i64(pp.B_lwe))
    throw DimensionError("sign: usk does not match the certificate pseudonym");

  GroupSignature out;

  // Step 1: one-time key.
  OtsSecretKey ots_sk;
  out.vk = ots_keygen(ots_sk, rng);

  // Step 3: encrypt the identity to the opener under vk.
  IbeEncryption enc = ibe_encrypt(gpk.B, out.vk, cert.id, pp, rng);
  out.c = enc.ct.c;

  // Step 4: tracing tag t = M x + e_t with M = H_LWE(rho).
  rng.fill(out.rho.data(), out.rho.size());
  ZqMatrix M_mat = tag_matrix(pp, out.rho);
  IntVector e_t = sample_lwe_vec(pp, pp.m_M, rng);
  out.t = ZqVector(pp.q_prime, pp.m_M);
  for (size_t i = 0; i < pp.m_M; ++i) {
    i128 acc = e_t[i];
    for (size_t r = 0; r < pp.n; ++r) acc += i128(M_mat.at(i, r)) * x[r];
    out.t[i] = reduce_i128(acc, pp.q_prime);
  }

  // Step 5: the signature of knowledge.
  SignStatementInputs in;
  in.F = gpk.F;
  in.B = gpk.B;
  in.M_mat = std::move(M_mat);
  in.A = gpk.tag_vk.A;
  in.A_prime = gpk.tag_vk.A_prime;
  in.D = gpk.tag_vk.D;
  in.u = gpk.tag_vk.u;
  in.v_id = ibe_identity(out.vk, pp);
  in.c = out.c;
  in.t = out.t;
  CompiledStatement cs = assemble_sign_statement(in, pp);

  SignSecrets sec;
  sec.z = usk.z;
  sec.id = cert.id;
  sec.y = cert.y;
  sec.v1 = cert.tsig.v1;
  sec.v2 = cert.tsig.v2;
  sec.r_enc = enc.r;
  sec.e_join = std::move(e_join);
  sec.e_c = enc.e_c;
  sec.e_t = std::move(e_t);
  ZqVector wit = assemble_sign_witness(in, sec, pp, cs);

  SokContext ctx = make_context(gpk.crs_sign, message, out.rho, cs.stmt);
  out.pi = nizk_prove(gpk.crs_sign, cs.stmt, wit, ctx, kSignTags, pp.kappa,
                      rng);

  // Step 6: bind everything under the one-time key.
  out.sig = ots_sign(ots_sk, ots_message(out));
  return out;
}

bool verify(const GroupPublicKey &gpk, const bytes &message,
            const GroupSignature &sigma) {
  if (!structurally_ok(gpk, sigma)) return false;
  if (!ots_verify(sigma.vk, ots_message(sigma), sigma.sig)) return false;
  CompiledStatement cs = sign_statement_of(gpk, sigma);
  SokContext ctx = make_context(gpk.crs_sign, message, sigma.rho, cs.stmt);
  return nizk_verify(gpk.crs_sign, cs.stmt, sigma.pi, ctx, kSignTags);
}

// ---------------------------------------------------------------------------
// Open / Reveal / Trace.

std::optional<u64> open(const GroupPublicKey &gpk, const OpeningKey &osk,
                        const bytes &message, const GroupSignature &sigma) {
  if (!verify(gpk, message, sigma)) return std::nullopt;
  bytes seed(osk.seed.begin(), osk.seed.end());
  IbeUserKey key = ibe_extract(gpk.B, osk.S_B, seed, sigma.vk, gpk.pp);
  return ibe_decrypt(IbeCiphertext{sigma.c}, key, gpk.pp);
}

OpenAudit open_audit(const GroupPublicKey &gpk, const OpeningKey &osk,
                     const Registry &reg, const bytes &message,
                     const GroupSignature &sigma) {
  OpenAudit audit;
  audit.id = open(gpk, osk, message, sigma);
  audit.registered = audit.id && reg.find(*audit.id) != nullptr;
  return audit;
}

std::optional<TracingTrapdoor> reveal(const GroupPublicKey &gpk,
                                      const OpeningKey &osk,
                                      const Registry &reg, u64 id,
                                      RngHandle &rng) {
  const ParamSet &pp = gpk.pp;
  const RegistryEntry *entry = reg.find(id);
  if (!entry) return std::nullopt;
  const ZqVector &y = entry->y;
  u64 qp = pp.q_prime;

  // Step 1: short kernel basis S of B.
  ZqMatrix Bbar = left_block(gpk.B, pp.m_B - pp.n * pp.log2_q_prime());
  IntMatrix S = sample_kernel_basis(Bbar, osk.S_B, pp.sigma_gpv, rng);

  // Step 2: S^T y = S^T e mod q'; the norm clamp on S's columns guarantees
  // |S^T e| < q'/2, so the centered representative is the integer value.
  std::vector<i64> b(pp.m_B);
  for (size_t i = 0; i < pp.m_B; ++i) {
    i128 acc = 0;
    for (size_t j = 0; j < pp.m_B; ++j) acc += i128(S.at(j, i)) * y[j];
    b[i] = centered_rep(reduce_i128(acc, qp), qp);
  }

  // Step 3: solve S^T e = b exactly.  S is certified full-rank mod
  // kRankPrime, so the unique rational solution is recovered mod that prime
  // and confirmed over the integers.
  ZqMatrix St(kRankPrime, pp.m_B, pp.m_B);
  ZqVector bP(kRankPrime, pp.m_B);
  for (size_t i = 0; i < pp.m_B; ++i) {
    for (size_t j = 0; j < pp.m_B; ++j)
      St.at(i, j) = reduce_i128(S.at(j, i), kRankPrime);
    bP[i] = reduce_i128(b[i], kRankPrime);
  }
  ZqVector eP;
  if (!solve_mod(St, bP, eP)) return std::nullopt;
  IntVector e(pp.m_B, 0);
  i64 maxabs = 0;
  for (size_t i = 0; i < pp.m_B; ++i) {
    e[i] = centered_rep(eP[i], kRankPrime);
    maxabs = std::max(maxabs, std::abs(e[i]));
  }
  e.bound = maxabs;
  if (maxabs > i64(pp.B_lwe)) return std::nullopt;
  for (size_t i = 0; i < pp.m_B; ++i) {
    i128 acc = 0;
    for (size_t j = 0; j < pp.m_B; ++j) acc += i128(S.at(j, i)) * e[j];
    if (acc != i128(b[i])) return std::nullopt;
  }

  // Steps 4-5: solve B^T x = y - e mod q'.
  ZqMatrix Bt(qp, pp.m_B, pp.n);
  ZqVector rhs(qp, pp.m_B);
  for (size_t i = 0; i < pp.m_B; ++i) {
    for (size_t r = 0; r < pp.n; ++r) Bt.at(i, r) = gpk.B.at(r, i);
    rhs[i] = reduce_i128(i128(y[i]) - e[i], qp);
  }
  ZqVector x;
  if (!solve_mod(Bt, rhs, x)) return std::nullopt;
  return TracingTrapdoor{std::move(x)};
}

bool trace(const GroupPublicKey &gpk, const TracingTrapdoor &trapdoor,
           const GroupSignature &sigma) {
  const ParamSet &pp = gpk.pp;
  if (!structurally_ok(gpk, sigma)) return false;
  if (trapdoor.x.q != pp.q_prime || trapdoor.x.size() != pp.n) return false;
  ZqMatrix M_mat = tag_matrix(pp, sigma.rho);
  for (size_t i = 0; i < pp.m_M; ++i) {
    i128 acc = sigma.t[i];
    for (size_t r = 0; r < pp.n; ++r)
      acc -= i128(M_mat.at(i, r)) * trapdoor.x[r];
    i64 res = centered_rep(reduce_i128(acc, pp.q_prime), pp.q_prime);
    if (std::abs(res) > i64(pp.B_lwe)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Claim / ClaimVerify.

std::optional<ClaimProof> claim(const GroupPublicKey &gpk,
                                const UserSecret &usk, const Certificate &cert,
                                const bytes &message,
                                const GroupSignature &sigma, RngHandle &rng) {
  const ParamSet &pp = gpk.pp;
  if (!verify(gpk, message, sigma)) return std::nullopt;
  ZqVector x = member_trapdoor(gpk, usk);
  ZqMatrix M_mat = tag_matrix(pp, sigma.rho);
  IntVector e_t(pp.m_M, 0);
  i64 maxabs = 0;
  for (size_t i = 0; i < pp.m_M; ++i) {
    i128 acc = sigma.t[i];
    for (size_t r = 0; r < pp.n; ++r) acc -= i128(M_mat.at(i, r)) * x[r];
    e_t[i] = centered_rep(reduce_i128(acc, pp.q_prime), pp.q_prime);
    maxabs = std::max(maxabs, std::abs(e_t[i]));
  }
  e_t.bound = maxabs;
  if (maxabs > i64(pp.B_lwe)) return std::nullopt;  // not the signer
  (void)cert;

  CompiledStatement cs = assemble_claim_statement(gpk.F, M_mat, sigma.t, pp);
  ClaimSecrets sec;
  sec.z = usk.z;
  sec.e_t = std::move(e_t);
  ZqVector wit = assemble_claim_witness(gpk.F, M_mat, sigma.t, sec, pp, cs);
  SokContext ctx = make_context(gpk.crs_claim, message, sigma.rho, cs.stmt);
  ClaimProof proof;
  proof.chi = nizk_prove(gpk.crs_claim, cs.stmt, wit, ctx, kClaimTags,
                         pp.kappa, rng);
  return proof;
}

bool claim_verify(const GroupPublicKey &gpk, const bytes &message,
                  const GroupSignature &sigma, const ClaimProof &proof) {
  const ParamSet &pp = gpk.pp;
  if (!structurally_ok(gpk, sigma)) return false;
  ZqMatrix M_mat = tag_matrix(pp, sigma.rho);
  CompiledStatement cs = assemble_claim_statement(gpk.F, M_mat, sigma.t, pp);
  SokContext ctx = make_context(gpk.crs_claim, message, sigma.rho, cs.stmt);
  return nizk_verify(gpk.crs_claim, cs.stmt, proof.chi, ctx, kClaimTags);
}

}  // namespace lts
