#include "lts/relations.hpp"

#include <cmath>

#include "lts/gadget.hpp"

namespace lts {

const Segment &WitnessLayout::seg(const std::string &name) const {
  for (const auto &s : segs)
    if (s.name == name) return s;
  throw DimensionError("layout: unknown segment " + name);
}

bool WitnessLayout::has(const std::string &name) const {
  for (const auto &s : segs)
    if (s.name == name) return true;
  return false;
}

namespace {

i128 floordiv(i128 a, i128 b) {  // b > 0
  i128 d = a / b;
  if (a % b != 0 && a < 0) --d;
  return d;
}

// Slack specification for one lifted row family: the row value before slack
// lies in [lo, hi], so the slack a with value + q'*a = 0 lies in
// [a_lo, a_lo + width].  Stored witness form is a - a_lo, range-decomposed.
struct SlackSpec {
  i64 a_lo = 0;
  i64 width = 0;
  IntVector gadget;  // range_gadget((width+1)/2); empty if width == 0

  size_t nbits() const { return gadget.size(); }
  u64 rg_beta() const { return static_cast<u64>((width + 1) / 2); }
};

SlackSpec make_slack(i128 lo, i128 hi, u64 qp) {
  SlackSpec sp;
  i128 a_lo = -floordiv(hi, i128(qp));
  i128 a_hi = floordiv(-lo, i128(qp));
  if (a_hi < a_lo) throw DimensionError("lift: empty slack range");
  sp.a_lo = static_cast<i64>(a_lo);
  sp.width = static_cast<i64>(a_hi - a_lo);
  if (sp.width >= 1) sp.gadget = range_gadget(sp.rg_beta());
  return sp;
}

// Soundness bound this row family imposes on q: the full adversarial range
// of value + q'*a must have width < q so that "0 mod q" forces "0 over Z".
double q_bound_of(i128 lo, i128 hi, u64 qp) {
  SlackSpec sp = make_slack(lo, hi, qp);
  return double(hi - lo) + double(qp) * double(sp.width + 1);
}

struct LayoutBuilder {
  WitnessLayout L;
  std::vector<QuadraticTriple> S;

  size_t add(const std::string &name, size_t len, bool bits) {
    size_t off = L.n_prime;
    L.segs.push_back({name, off, len});
    L.n_prime += len;
    if (bits)
      for (size_t i = 0; i < len; ++i) {
        u32 c = static_cast<u32>(off + i);
        S.push_back({c, c, c});
      }
    return off;
  }
};

// Accumulates rows over Z (lifted) or mod q (native), and optionally fills
// slack witness bits as it goes.
struct Comp {
  u64 q = 0, qp = 0;
  ZqVector *wit = nullptr;  // non-null when assembling the witness
  struct Row {
    std::vector<std::pair<u32, i64>> terms;
    i128 rhs = 0;
  };
  std::vector<Row> rows;

  // Row with integer coefficients, satisfied as  terms + c0 + q'*a = 0 over Z.
  void lifted(std::vector<std::pair<u32, i64>> &&terms, i128 c0,
              const SlackSpec &sp, size_t slack_off) {
    if (wit) {
      i128 L = c0;
      for (const auto &[col, cf] : terms) L += i128(cf) * i128((*wit)[col]);
      if (L % i128(qp) != 0)
        throw DimensionError("lift: honest row not divisible by q'");
      i128 a = -(L / i128(qp));
      i128 rel = a - sp.a_lo;
      if (rel < 0 || rel > sp.width)
        throw DimensionError("lift: slack outside declared range");
      if (sp.width >= 1) {
        BitVector bits = range_decompose(static_cast<u64>(rel), sp.rg_beta());
        for (size_t d = 0; d < bits.size(); ++d)
          (*wit)[slack_off + d] = bits[d];
      }
    }
    for (size_t d = 0; d < sp.nbits(); ++d)
      terms.emplace_back(static_cast<u32>(slack_off + d),
                         i64(qp) * sp.gadget[d]);
    rows.push_back({std::move(terms), -c0 - i128(qp) * sp.a_lo});
  }

  // Native mod-q row: terms = rhs mod q (coefficients already canonical).
  void native(std::vector<std::pair<u32, i64>> &&terms, u64 rhs) {
    rows.push_back({std::move(terms), i128(rhs)});
  }

  QuadraticStatement freeze(size_t n_prime,
                            std::vector<QuadraticTriple> &&S) const {
    SparseBuilder sb(q, rows.size(), n_prime);
    QuadraticStatement stmt;
    stmt.y = ZqVector(q, rows.size());
    for (size_t r = 0; r < rows.size(); ++r) {
      for (const auto &[col, cf] : rows[r].terms) {
        u64 v = reduce_i128(i128(cf), q);
        if (v != 0) sb.add(r, col, v);
      }
      stmt.y[r] = reduce_i128(rows[r].rhs, q);
    }
    stmt.A = sb.freeze();
    stmt.S = std::move(S);
    return stmt;
  }
};

// ---------------------------------------------------------------------------
// Scalar-only context shared by layout sizing, q bounds, statement assembly
// and witness assembly.  Worst-case row ranges use the centered-entry bound
// floor(q'/2) so that the layout never depends on concrete matrices.

struct SignCtx {
  u64 qp = 0;
  size_t n, ell, m_F, m_B, m_M, m_1, m_2, kq, kQ;
  u64 B_lwe, B_gpv, beta_1, beta_2, delta, N;
  IntVector g_e, g_ec, g_v1, g_v2;
  SlackSpec sp_sis, sp_lwe1, sp_enc, sp_enc_id, sp_lwe2;
  size_t o_z, o_w, o_y, o_id, o_r, o_e, o_ec, o_et, o_v1, o_v2;
  size_t o_asis, o_alwe1, o_aenc, o_aencid, o_alwe2;
  size_t o_idraw, o_wraw, o_praw;
  LayoutBuilder lb;
  // Worst-case pre-slack row ranges (kept for q_lower_bounds).
  i128 sis_lo, sis_hi, lwe1_lo, lwe1_hi, enc_lo, enc_hi, encid_lo, encid_hi,
      lwe2_lo, lwe2_hi;
};

SignCtx make_sign_ctx(const ParamSet &pp) {
  SignCtx c;
  c.qp = pp.q_prime;
  c.n = pp.n;
  c.ell = pp.ell;
  c.m_F = pp.m_F;
  c.m_B = pp.m_B;
  c.m_M = pp.m_M;
  c.m_1 = pp.m_1;
  c.m_2 = pp.m_2;
  c.kq = pp.log2_q_prime();
  c.kQ = pp.log2_q();
  c.B_lwe = pp.B_lwe;
  c.B_gpv = pp.B_gpv;
  c.beta_1 = pp.beta_1;
  c.beta_2 = pp.beta_2;
  c.N = pp.N;
  c.delta = (pp.q_prime + (pp.N + 1)) / (2 * (pp.N + 1));
  c.g_e = range_gadget(c.B_lwe);
  c.g_ec = range_gadget(c.B_gpv);
  c.g_v1 = range_gadget(c.beta_1);
  c.g_v2 = range_gadget(c.beta_2);

  i128 h = c.qp / 2;
  i128 vmax = (i128(1) << c.kq) - 1;  // any value a bit block can take
  c.sis_lo = -h * i128(c.m_F);
  c.sis_hi = vmax + h * i128(c.m_F);
  c.lwe1_lo = -i128(c.n) * h * vmax - i128(c.B_lwe);
  c.lwe1_hi = vmax + i128(c.n) * h * vmax + i128(c.B_lwe);
  c.enc_lo = -(i128(c.n) * h * vmax + i128(c.B_gpv) + h);
  c.enc_hi = i128(c.n) * h * vmax + i128(c.B_gpv) + h;
  c.encid_lo = c.enc_lo;
  c.encid_hi = c.enc_hi + i128(c.delta) * (((i128(1) << c.ell)) - 1);
  c.lwe2_lo = -(i128(c.n) * h * vmax + i128(c.B_lwe) + h);
  c.lwe2_hi = i128(c.n) * h * vmax + i128(c.B_lwe) + h;
  c.sp_sis = make_slack(c.sis_lo, c.sis_hi, c.qp);
  c.sp_lwe1 = make_slack(c.lwe1_lo, c.lwe1_hi, c.qp);
  c.sp_enc = make_slack(c.enc_lo, c.enc_hi, c.qp);
  c.sp_enc_id = make_slack(c.encid_lo, c.encid_hi, c.qp);
  c.sp_lwe2 = make_slack(c.lwe2_lo, c.lwe2_hi, c.qp);

  auto &lb = c.lb;
  c.o_z = lb.add("z", c.m_F, true);
  c.o_w = lb.add("w", c.n * c.kq, true);
  c.o_y = lb.add("y", c.m_B * c.kq, true);
  c.o_id = lb.add("id", c.ell, true);
  c.o_r = lb.add("r", c.n * c.kq, true);
  c.o_e = lb.add("e", c.m_B * c.g_e.size(), true);
  c.o_ec = lb.add("ec", (c.m_B + 1) * c.g_ec.size(), true);
  c.o_et = lb.add("et", c.m_M * c.g_e.size(), true);
  c.o_v1 = lb.add("v1", c.m_1 * c.g_v1.size(), true);
  c.o_v2 = lb.add("v2", c.m_2 * c.g_v2.size(), true);
  c.o_asis = lb.add("a_sis", c.n * c.sp_sis.nbits(), true);
  c.o_alwe1 = lb.add("a_lwe1", c.m_B * c.sp_lwe1.nbits(), true);
  c.o_aenc = lb.add("a_enc", c.m_B * c.sp_enc.nbits(), true);
  c.o_aencid = lb.add("a_enc_id", c.sp_enc_id.nbits(), true);
  c.o_alwe2 = lb.add("a_lwe2", c.m_M * c.sp_lwe2.nbits(), true);
  c.o_idraw = lb.add("id_raw", 1, false);
  c.o_wraw = lb.add("w_raw", c.n, false);
  c.o_praw = lb.add("p_raw", c.n, false);
  // Product triples realizing id * (G v2)_j in the certificate equation.
  for (size_t i = 0; i < c.n; ++i)
    c.lb.S.push_back({static_cast<u32>(c.o_praw + i),
                      static_cast<u32>(c.o_idraw),
                      static_cast<u32>(c.o_wraw + i)});
  return c;
}

struct ClaimCtx {
  u64 qp = 0;
  size_t n, m_F, m_M, kq;
  u64 B_lwe;
  IntVector g_e;
  SlackSpec sp_sis, sp_lwe2;
  size_t o_z, o_w, o_et, o_asis, o_alwe2;
  LayoutBuilder lb;
  i128 sis_lo, sis_hi, lwe2_lo, lwe2_hi;
};

ClaimCtx make_claim_ctx(const ParamSet &pp) {
  ClaimCtx c;
  c.qp = pp.q_prime;
  c.n = pp.n;
  c.m_F = pp.m_F;
  c.m_M = pp.m_M;
  c.kq = pp.log2_q_prime();
  c.B_lwe = pp.B_lwe;
  c.g_e = range_gadget(c.B_lwe);
  i128 h = c.qp / 2;
  i128 vmax = (i128(1) << c.kq) - 1;
  c.sis_lo = -h * i128(c.m_F);
  c.sis_hi = vmax + h * i128(c.m_F);
  c.lwe2_lo = -(i128(c.n) * h * vmax + i128(c.B_lwe) + h);
  c.lwe2_hi = i128(c.n) * h * vmax + i128(c.B_lwe) + h;
  c.sp_sis = make_slack(c.sis_lo, c.sis_hi, c.qp);
  c.sp_lwe2 = make_slack(c.lwe2_lo, c.lwe2_hi, c.qp);
  c.o_z = c.lb.add("z", c.m_F, true);
  c.o_w = c.lb.add("w", c.n * c.kq, true);
  c.o_et = c.lb.add("et", c.m_M * c.g_e.size(), true);
  c.o_asis = c.lb.add("a_sis", c.n * c.sp_sis.nbits(), true);
  c.o_alwe2 = c.lb.add("a_lwe2", c.m_M * c.sp_lwe2.nbits(), true);
  return c;
}

// ---------------------------------------------------------------------------
// Row emitters.  x refers to the usk image F*z, w = bin(x); all centered
// representatives are taken mod q'.

// G_n * w - F * z + q' * a = 0   (n rows)
void emit_sis(Comp &cp, const SignCtx &c, const ZqMatrix &F, size_t o_z,
              size_t o_w, size_t o_asis, const SlackSpec &sp) {
  for (size_t i = 0; i < c.n; ++i) {
    std::vector<std::pair<u32, i64>> terms;
    terms.reserve(c.kq + c.m_F);
    for (size_t k = 0; k < c.kq; ++k)
      terms.emplace_back(static_cast<u32>(o_w + i * c.kq + k),
                         i64(u64(1) << k));
    for (size_t j = 0; j < c.m_F; ++j) {
      i64 cf = -centered_rep(F.at(i, j), c.qp);
      if (cf != 0) terms.emplace_back(static_cast<u32>(o_z + j), cf);
    }
    cp.lifted(std::move(terms), 0, sp, o_asis + i * sp.nbits());
  }
}

// G_{m_B} * bin(y) - B^T * (G_n w) - e + q' * a = 0   (m_B rows)
void emit_lwe1(Comp &cp, const SignCtx &c, const ZqMatrix &B) {
  for (size_t i = 0; i < c.m_B; ++i) {
    std::vector<std::pair<u32, i64>> terms;
    terms.reserve(c.kq + c.n * c.kq + c.g_e.size());
    for (size_t k = 0; k < c.kq; ++k)
      terms.emplace_back(static_cast<u32>(c.o_y + i * c.kq + k),
                         i64(u64(1) << k));
    for (size_t j = 0; j < c.n; ++j) {
      i64 b = centered_rep(B.at(j, i), c.qp);
      if (b == 0) continue;
      for (size_t k = 0; k < c.kq; ++k)
        terms.emplace_back(static_cast<u32>(c.o_w + j * c.kq + k),
                           -b * i64(u64(1) << k));
    }
    for (size_t d = 0; d < c.g_e.size(); ++d)
      terms.emplace_back(static_cast<u32>(c.o_e + i * c.g_e.size() + d),
                         -c.g_e[d]);
    cp.lifted(std::move(terms), i128(c.B_lwe), c.sp_lwe1,
              c.o_alwe1 + i * c.sp_lwe1.nbits());
  }
}

// (B^T; v^T) * r + e_c + (0; Delta*id) - c + q' * a = 0   (m_B + 1 rows)
void emit_enc(Comp &cp, const SignCtx &c, const ZqMatrix &B,
              const ZqVector &v_id, const ZqVector &cvec) {
  for (size_t i = 0; i <= c.m_B; ++i) {
    bool last = (i == c.m_B);
    std::vector<std::pair<u32, i64>> terms;
    for (size_t j = 0; j < c.n; ++j) {
      i64 b = centered_rep(last ? v_id[j] : B.at(j, i), c.qp);
      if (b == 0) continue;
      for (size_t k = 0; k < c.kq; ++k)
        terms.emplace_back(static_cast<u32>(c.o_r + j * c.kq + k),
                           b * i64(u64(1) << k));
    }
    for (size_t d = 0; d < c.g_ec.size(); ++d)
      terms.emplace_back(static_cast<u32>(c.o_ec + i * c.g_ec.size() + d),
                         c.g_ec[d]);
    if (last)
      for (size_t k = 0; k < c.ell; ++k)
        terms.emplace_back(static_cast<u32>(c.o_id + k),
                           i64(c.delta) * i64(u64(1) << k));
    i128 c0 = -i128(c.B_gpv) - centered_rep(cvec[i], c.qp);
    if (last)
      cp.lifted(std::move(terms), c0, c.sp_enc_id, c.o_aencid);
    else
      cp.lifted(std::move(terms), c0, c.sp_enc,
                c.o_aenc + i * c.sp_enc.nbits());
  }
}

// M * (G_n w) + e_t - t + q' * a = 0   (m_M rows); shared with Claim.
template <typename Ctx>
void emit_lwe2(Comp &cp, const Ctx &c, const ZqMatrix &M_mat,
               const ZqVector &t, size_t o_w, size_t o_et, size_t o_alwe2,
               const SlackSpec &sp, const IntVector &g_e) {
  for (size_t i = 0; i < c.m_M; ++i) {
    std::vector<std::pair<u32, i64>> terms;
    for (size_t j = 0; j < c.n; ++j) {
      i64 m = centered_rep(M_mat.at(i, j), c.qp);
      if (m == 0) continue;
      for (size_t k = 0; k < c.kq; ++k)
        terms.emplace_back(static_cast<u32>(o_w + j * c.kq + k),
                           m * i64(u64(1) << k));
    }
    for (size_t d = 0; d < g_e.size(); ++d)
      terms.emplace_back(static_cast<u32>(o_et + i * g_e.size() + d), g_e[d]);
    i128 c0 = -i128(c.B_lwe) - centered_rep(t[i], c.qp);
    cp.lifted(std::move(terms), c0, sp, o_alwe2 + i * sp.nbits());
  }
}

// Certificate equation, native mod q (n rows), plus the defining rows for
// w_raw (n rows) and id_raw (1 row).
void emit_cert(Comp &cp, const SignCtx &c, const SignStatementInputs &in,
               u64 q) {
  // A v1 + A' v2 + p - D bin(y) = u  mod q
  for (size_t i = 0; i < c.n; ++i) {
    std::vector<std::pair<u32, i64>> terms;
    u64 rhs = in.u[i];
    for (size_t j = 0; j < c.m_1; ++j) {
      u64 aij = in.A.at(i, j);
      if (aij == 0) continue;
      for (size_t d = 0; d < c.g_v1.size(); ++d)
        terms.emplace_back(
            static_cast<u32>(c.o_v1 + j * c.g_v1.size() + d),
            i64(mul_mod(aij, u64(c.g_v1[d]), q)));
      rhs = add_mod(rhs, mul_mod(aij, c.beta_1 % q, q), q);
    }
    for (size_t j = 0; j < c.m_2; ++j) {
      u64 aij = in.A_prime.at(i, j);
      if (aij == 0) continue;
      for (size_t d = 0; d < c.g_v2.size(); ++d)
        terms.emplace_back(
            static_cast<u32>(c.o_v2 + j * c.g_v2.size() + d),
            i64(mul_mod(aij, u64(c.g_v2[d]), q)));
      rhs = add_mod(rhs, mul_mod(aij, c.beta_2 % q, q), q);
    }
    terms.emplace_back(static_cast<u32>(c.o_praw + i), 1);
    for (size_t j = 0; j < c.m_B * c.kq; ++j) {
      u64 dij = in.D.at(i, j);
      if (dij != 0)
        terms.emplace_back(static_cast<u32>(c.o_y + j), i64(neg_mod(dij, q)));
    }
    cp.native(std::move(terms), rhs);
  }
  // w_raw[i] - sum_k 2^k * v2[i*kQ + k] = 0 mod q (v2 value from its bits)
  u64 pow2sum = 0;
  for (size_t k = 0; k < c.kQ; ++k)
    pow2sum = add_mod(pow2sum, (u64(1) << k) % q, q);
  for (size_t i = 0; i < c.n; ++i) {
    std::vector<std::pair<u32, i64>> terms;
    terms.emplace_back(static_cast<u32>(c.o_wraw + i), 1);
    for (size_t k = 0; k < c.kQ; ++k) {
      u64 p2 = (u64(1) << k) % q;
      size_t j = i * c.kQ + k;
      for (size_t d = 0; d < c.g_v2.size(); ++d)
        terms.emplace_back(
            static_cast<u32>(c.o_v2 + j * c.g_v2.size() + d),
            i64(neg_mod(mul_mod(p2, u64(c.g_v2[d]), q), q)));
    }
    cp.native(std::move(terms), neg_mod(mul_mod(c.beta_2 % q, pow2sum, q), q));
  }
  // id_raw = sum_k 2^k id_bits[k]
  {
    std::vector<std::pair<u32, i64>> terms;
    terms.emplace_back(static_cast<u32>(c.o_idraw), 1);
    for (size_t k = 0; k < c.ell; ++k)
      terms.emplace_back(static_cast<u32>(c.o_id + k),
                         i64(neg_mod(u64(1) << k, q)));
    cp.native(std::move(terms), 0);
  }
}

// ---------------------------------------------------------------------------
// Witness fills.

void fill_range_bits(ZqVector &wit, size_t off, const IntVector &vals,
                     u64 beta, const char *what) {
  IntVector g = range_gadget(beta);
  for (size_t i = 0; i < vals.size(); ++i) {
    if (std::abs(vals[i]) > i64(beta))
      throw DimensionError(std::string("witness: bound violated in ") + what);
    BitVector b = range_decompose(static_cast<u64>(vals[i] + i64(beta)), beta);
    for (size_t d = 0; d < b.size(); ++d) wit[off + i * g.size() + d] = b[d];
  }
}

void fill_canonical_bits(ZqVector &wit, size_t off, const ZqVector &vals,
                         size_t kq) {
  for (size_t i = 0; i < vals.size(); ++i)
    for (size_t k = 0; k < kq; ++k)
      wit[off + i * kq + k] = (vals[i] >> k) & 1;
}

void fill_sign_witness(ZqVector &wit, const SignCtx &c,
                       const SignStatementInputs &in, const SignSecrets &sec,
                       u64 q) {
  if (sec.z.size() != c.m_F || sec.y.size() != c.m_B ||
      sec.r_enc.size() != c.n || sec.e_join.size() != c.m_B ||
      sec.e_c.size() != c.m_B + 1 || sec.e_t.size() != c.m_M ||
      sec.v1.size() != c.m_1 || sec.v2.size() != c.m_2)
    throw DimensionError("witness: secret dimensions");
  if (sec.id < 1 || sec.id > c.N)
    throw DimensionError("witness: id out of [1, N]");
  sec.z.check_bits();

  for (size_t j = 0; j < c.m_F; ++j) wit[c.o_z + j] = sec.z[j];
  // x = F z mod q', w = bin(x)
  ZqVector x(c.qp, c.n);
  for (size_t i = 0; i < c.n; ++i) {
    u128 acc = 0;
    for (size_t j = 0; j < c.m_F; ++j)
      if (sec.z[j]) acc += in.F.at(i, j);
    x[i] = static_cast<u64>(acc % c.qp);
  }
  fill_canonical_bits(wit, c.o_w, x, c.kq);
  fill_canonical_bits(wit, c.o_y, sec.y, c.kq);
  for (size_t k = 0; k < c.ell; ++k) wit[c.o_id + k] = (sec.id >> k) & 1;
  fill_canonical_bits(wit, c.o_r, sec.r_enc, c.kq);
  fill_range_bits(wit, c.o_e, sec.e_join, c.B_lwe, "e_join");
  fill_range_bits(wit, c.o_ec, sec.e_c, c.B_gpv, "e_c");
  fill_range_bits(wit, c.o_et, sec.e_t, c.B_lwe, "e_t");
  fill_range_bits(wit, c.o_v1, sec.v1, c.beta_1, "v1");
  fill_range_bits(wit, c.o_v2, sec.v2, c.beta_2, "v2");

  u64 id_q = sec.id % q;
  wit[c.o_idraw] = id_q;
  for (size_t i = 0; i < c.n; ++i) {
    i128 acc = 0;
    for (size_t k = 0; k < c.kQ; ++k)
      acc += i128(i64(u64(1) << k)) * sec.v2[i * c.kQ + k];
    u64 w = reduce_i128(acc, q);
    wit[c.o_wraw + i] = w;
    wit[c.o_praw + i] = mul_mod(id_q, w, q);
  }
}

void fill_claim_witness(ZqVector &wit, const ClaimCtx &c, const ZqMatrix &F,
                        const ClaimSecrets &sec) {
  if (sec.z.size() != c.m_F || sec.e_t.size() != c.m_M)
    throw DimensionError("witness: secret dimensions");
  sec.z.check_bits();
  for (size_t j = 0; j < c.m_F; ++j) wit[c.o_z + j] = sec.z[j];
  ZqVector x(c.qp, c.n);
  for (size_t i = 0; i < c.n; ++i) {
    u128 acc = 0;
    for (size_t j = 0; j < c.m_F; ++j)
      if (sec.z[j]) acc += F.at(i, j);
    x[i] = static_cast<u64>(acc % c.qp);
  }
  fill_canonical_bits(wit, c.o_w, x, c.kq);
  fill_range_bits(wit, c.o_et, sec.e_t, c.B_lwe, "e_t");
}

// ---------------------------------------------------------------------------
// Shared builders.

CompiledStatement build_sign(const SignStatementInputs &in, const ParamSet &pp,
                             const SignSecrets *sec, ZqVector *wit_out) {
  SignCtx c = make_sign_ctx(pp);
  u64 q = pp.q;
  if (in.F.q != c.qp || in.B.q != c.qp || in.M_mat.q != c.qp ||
      in.v_id.q != c.qp || in.c.q != c.qp || in.t.q != c.qp ||
      in.A.q != q || in.A_prime.q != q || in.D.q != q || in.u.q != q)
    throw DimensionError("sign statement: modulus mismatch");
  if (in.F.rows != c.n || in.F.cols != c.m_F || in.B.rows != c.n ||
      in.B.cols != c.m_B || in.M_mat.rows != c.m_M || in.M_mat.cols != c.n ||
      in.A.rows != c.n || in.A.cols != c.m_1 || in.A_prime.rows != c.n ||
      in.A_prime.cols != c.m_2 || in.D.rows != c.n ||
      in.D.cols != c.m_B * c.kq || in.u.size() != c.n ||
      in.v_id.size() != c.n || in.c.size() != c.m_B + 1 ||
      in.t.size() != c.m_M)
    throw DimensionError("sign statement: input dimensions");

  Comp cp;
  cp.q = q;
  cp.qp = c.qp;
  ZqVector wit;
  if (sec) {
    wit = ZqVector(q, c.lb.L.n_prime);
    fill_sign_witness(wit, c, in, *sec, q);
    cp.wit = &wit;
  }
  emit_sis(cp, c, in.F, c.o_z, c.o_w, c.o_asis, c.sp_sis);
  emit_lwe1(cp, c, in.B);
  emit_enc(cp, c, in.B, in.v_id, in.c);
  emit_lwe2(cp, c, in.M_mat, in.t, c.o_w, c.o_et, c.o_alwe2, c.sp_lwe2,
            c.g_e);
  emit_cert(cp, c, in, q);

  CompiledStatement out;
  out.stmt = cp.freeze(c.lb.L.n_prime, std::move(c.lb.S));
  out.layout = std::move(c.lb.L);
  if (wit_out) *wit_out = std::move(wit);
  return out;
}

CompiledStatement build_claim(const ZqMatrix &F, const ZqMatrix &M_mat,
                              const ZqVector &t, const ParamSet &pp,
                              const ClaimSecrets *sec, ZqVector *wit_out) {
  ClaimCtx c = make_claim_ctx(pp);
  u64 q = pp.q;
  if (F.q != c.qp || M_mat.q != c.qp || t.q != c.qp)
    throw DimensionError("claim statement: modulus mismatch");
  if (F.rows != c.n || F.cols != c.m_F || M_mat.rows != c.m_M ||
      M_mat.cols != c.n || t.size() != c.m_M)
    throw DimensionError("claim statement: input dimensions");

  Comp cp;
  cp.q = q;
  cp.qp = c.qp;
  ZqVector wit;
  if (sec) {
    wit = ZqVector(q, c.lb.L.n_prime);
    fill_claim_witness(wit, c, F, *sec);
    cp.wit = &wit;
  }
  // SIS rows reuse the sign emitter through a thin shim context.
  for (size_t i = 0; i < c.n; ++i) {
    std::vector<std::pair<u32, i64>> terms;
    for (size_t k = 0; k < c.kq; ++k)
      terms.emplace_back(static_cast<u32>(c.o_w + i * c.kq + k),
                         i64(u64(1) << k));
    for (size_t j = 0; j < c.m_F; ++j) {
      i64 cf = -centered_rep(F.at(i, j), c.qp);
      if (cf != 0) terms.emplace_back(static_cast<u32>(c.o_z + j), cf);
    }
    cp.lifted(std::move(terms), 0, c.sp_sis,
              c.o_asis + i * c.sp_sis.nbits());
  }
  emit_lwe2(cp, c, M_mat, t, c.o_w, c.o_et, c.o_alwe2, c.sp_lwe2, c.g_e);

  CompiledStatement out;
  out.stmt = cp.freeze(c.lb.L.n_prime, std::move(c.lb.S));
  out.layout = std::move(c.lb.L);
  if (wit_out) *wit_out = std::move(wit);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API.

LiftedSystem lift_and_binarize(const ZqMatrix &A, const ZqVector &y,
                               const std::vector<i64> &beta, u64 q) {
  u64 qp = A.q;
  if (y.q != qp || y.size() != A.rows || beta.size() != A.cols)
    throw DimensionError("lift: input dimensions");
  if (q <= qp) throw DimensionError("lift: q must exceed q'");
  for (i64 b : beta)
    if (b < 1) throw DimensionError("lift: bounds must be >= 1");

  LiftedSystem sys;
  sys.A_orig = A;
  sys.y_orig = y;
  sys.beta = beta;

  LayoutBuilder lb;
  std::vector<size_t> x_off(A.cols);
  for (size_t j = 0; j < A.cols; ++j)
    x_off[j] = lb.add("x" + std::to_string(j),
                      range_gadget_len(static_cast<u64>(beta[j])), true);

  // Per-row slack from the actual centered entries.
  std::vector<SlackSpec> sps(A.rows);
  std::vector<size_t> a_off(A.rows);
  for (size_t i = 0; i < A.rows; ++i) {
    i128 mag = 0;
    for (size_t j = 0; j < A.cols; ++j)
      mag += i128(std::abs(centered_rep(A.at(i, j), qp))) * beta[j];
    i128 c0 = -centered_rep(y[i], qp);
    sps[i] = make_slack(-mag + c0, mag + c0, qp);
    a_off[i] = lb.add("a" + std::to_string(i), sps[i].nbits(), true);
    sys.slack_lo.push_back(sps[i].a_lo);
    sys.slack_hi.push_back(sps[i].a_lo + sps[i].width);
  }

  Comp cp;
  cp.q = q;
  cp.qp = qp;
  for (size_t i = 0; i < A.rows; ++i) {
    std::vector<std::pair<u32, i64>> terms;
    for (size_t j = 0; j < A.cols; ++j) {
      i64 cf = centered_rep(A.at(i, j), qp);
      if (cf == 0) continue;
      IntVector g = range_gadget(static_cast<u64>(beta[j]));
      for (size_t d = 0; d < g.size(); ++d)
        terms.emplace_back(static_cast<u32>(x_off[j] + d), cf * g[d]);
    }
    // Shift constants: x_j = sum g b - beta_j.
    i128 c0 = -i128(centered_rep(y[i], qp));
    for (size_t j = 0; j < A.cols; ++j)
      c0 -= i128(centered_rep(A.at(i, j), qp)) * beta[j];
    cp.lifted(std::move(terms), c0, sps[i], a_off[i]);
  }
  sys.stmt = cp.freeze(lb.L.n_prime, std::move(lb.S));
  sys.layout = std::move(lb.L);
  return sys;
}

ZqVector LiftedSystem::assemble(const IntVector &x) const {
  u64 qp = A_orig.q;
  u64 q = stmt.q();
  if (x.size() != A_orig.cols) throw DimensionError("lift: witness length");
  ZqVector wit(q, layout.n_prime);
  for (size_t j = 0; j < A_orig.cols; ++j) {
    if (std::abs(x[j]) > beta[j])
      throw DimensionError("lift: witness bound violated at column " +
                           std::to_string(j));
    const Segment &s = layout.seg("x" + std::to_string(j));
    BitVector b = range_decompose(static_cast<u64>(x[j] + beta[j]),
                                  static_cast<u64>(beta[j]));
    for (size_t d = 0; d < b.size(); ++d) wit[s.offset + d] = b[d];
  }
  for (size_t i = 0; i < A_orig.rows; ++i) {
    i128 L = -i128(centered_rep(y_orig[i], qp));
    for (size_t j = 0; j < A_orig.cols; ++j)
      L += i128(centered_rep(A_orig.at(i, j), qp)) * x[j];
    if (L % i128(qp) != 0)
      throw DimensionError("lift: witness does not satisfy row " +
                           std::to_string(i));
    i64 a = static_cast<i64>(-(L / i128(qp)));
    if (a < slack_lo[i] || a > slack_hi[i])
      throw DimensionError("lift: slack out of range at row " +
                           std::to_string(i));
    i64 width = slack_hi[i] - slack_lo[i];
    if (width >= 1) {
      const Segment &s = layout.seg("a" + std::to_string(i));
      u64 rb = static_cast<u64>((width + 1) / 2);
      BitVector b = range_decompose(static_cast<u64>(a - slack_lo[i]), rb);
      for (size_t d = 0; d < b.size(); ++d) wit[s.offset + d] = b[d];
    }
  }
  return wit;
}

CompiledStatement assemble_sign_statement(const SignStatementInputs &in,
                                          const ParamSet &pp) {
  return build_sign(in, pp, nullptr, nullptr);
}

ZqVector assemble_sign_witness(const SignStatementInputs &in,
                               const SignSecrets &sec, const ParamSet &pp,
                               const CompiledStatement &cs) {
  ZqVector wit;
  CompiledStatement rebuilt = build_sign(in, pp, &sec, &wit);
  if (rebuilt.layout.n_prime != cs.layout.n_prime ||
      rebuilt.stmt.S.size() != cs.stmt.S.size())
    throw DimensionError("sign witness: statement/layout mismatch");
  return wit;
}

CompiledStatement assemble_claim_statement(const ZqMatrix &F,
                                           const ZqMatrix &M_mat,
                                           const ZqVector &t,
                                           const ParamSet &pp) {
  return build_claim(F, M_mat, t, pp, nullptr, nullptr);
}

ZqVector assemble_claim_witness(const ZqMatrix &F, const ZqMatrix &M_mat,
                                const ZqVector &t, const ClaimSecrets &sec,
                                const ParamSet &pp,
                                const CompiledStatement &cs) {
  ZqVector wit;
  CompiledStatement rebuilt = build_claim(F, M_mat, t, pp, &sec, &wit);
  if (rebuilt.layout.n_prime != cs.layout.n_prime ||
      rebuilt.stmt.S.size() != cs.stmt.S.size())
    throw DimensionError("claim witness: statement/layout mismatch");
  return wit;
}

LayoutDims sign_layout_dims(const ParamSet &pp) {
  SignCtx c = make_sign_ctx(pp);
  return {c.lb.L.n_prime, c.lb.S.size()};
}

LayoutDims claim_layout_dims(const ParamSet &pp) {
  ClaimCtx c = make_claim_ctx(pp);
  return {c.lb.L.n_prime, c.lb.S.size()};
}

std::vector<std::pair<std::string, double>> q_lower_bounds(const ParamSet &pp) {
  SignCtx c = make_sign_ctx(pp);
  std::vector<std::pair<std::string, double>> out;
  out.emplace_back("lift_sis", q_bound_of(c.sis_lo, c.sis_hi, c.qp));
  out.emplace_back("lift_lwe1", q_bound_of(c.lwe1_lo, c.lwe1_hi, c.qp));
  out.emplace_back("lift_enc", q_bound_of(c.enc_lo, c.enc_hi, c.qp));
  out.emplace_back("lift_enc_id", q_bound_of(c.encid_lo, c.encid_hi, c.qp));
  out.emplace_back("lift_lwe2", q_bound_of(c.lwe2_lo, c.lwe2_hi, c.qp));
  // Prop. C.1: q >= 16 p max(l1+l2+n', l1+l2+|S|)(sigma2 + p sigma1)
  //            * sqrt(l1) log(l1).
  double dim = double(std::max(pp.l1 + pp.l2 + c.lb.L.n_prime,
                               pp.l1 + pp.l2 + c.lb.S.size()));
  double zk = 16.0 * double(pp.p) * dim *
              (pp.sigma_2 + double(pp.p) * pp.sigma_1) *
              std::sqrt(double(pp.l1)) * std::log(double(pp.l1));
  out.emplace_back("zk_prop_c1", zk);
  out.emplace_back("challenge_space", 2.0 * double(pp.p) + 1.0);
  return out;
}

}  // namespace lts
