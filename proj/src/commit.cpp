#include "lts/commit.hpp"

#include <algorithm>
#include <bit>

#include "lts/xof.hpp"

namespace lts {

ZqMatrix BdlopMatrix::dense() const {
  ZqMatrix M(q, l1 + mid, l1 + mid + l2);
  for (size_t r = 0; r < l1; ++r) {
    M.at(r, r) = 1;
    for (size_t c = 0; c < mid + l2; ++c) M.at(r, l1 + c) = Btop.at(r, c);
  }
  for (size_t r = 0; r < mid; ++r) {
    M.at(l1 + r, l1 + r) = 1;
    for (size_t c = 0; c < l2; ++c) M.at(l1 + r, l1 + mid + c) = Bbot.at(r, c);
  }
  return M;
}

void BdlopMatrix::encode_into(Encoder &enc) const {
  enc.put_tagged_u64(q);
  enc.put_tagged_u64(l1);
  enc.put_tagged_u64(mid);
  enc.put_tagged_u64(l2);
  enc.put(Btop);
  enc.put(Bbot);
}

BdlopMatrix BdlopMatrix::decode_from(Decoder &dec) {
  BdlopMatrix m;
  m.q = dec.get_tagged_u64();
  m.l1 = dec.get_tagged_u64();
  m.mid = dec.get_tagged_u64();
  m.l2 = dec.get_tagged_u64();
  m.Btop = dec.get_zq_matrix();
  m.Bbot = dec.get_zq_matrix();
  if (m.Btop.q != m.q || m.Bbot.q != m.q ||
      m.Btop.rows != m.l1 || m.Btop.cols != m.mid + m.l2 ||
      m.Bbot.rows != m.mid || m.Bbot.cols != m.l2)
    throw CodecError("bdlop matrix: inconsistent dimensions");
  return m;
}

bytes BdlopCrs::encode() const {
  Encoder enc;
  B1.encode_into(enc);
  B2.encode_into(enc);
  enc.put_tagged_u64(std::bit_cast<u64>(sigma_1));
  enc.put_tagged_u64(std::bit_cast<u64>(sigma_2));
  enc.put_tagged_u64(p);
  enc.put_tagged_u64(std::bit_cast<u64>(M_rej));
  return enc.take();
}

BdlopCrs BdlopCrs::decode(const bytes &data) {
  Decoder dec(data);
  BdlopCrs crs;
  crs.B1 = BdlopMatrix::decode_from(dec);
  crs.B2 = BdlopMatrix::decode_from(dec);
  crs.sigma_1 = std::bit_cast<double>(dec.get_tagged_u64());
  crs.sigma_2 = std::bit_cast<double>(dec.get_tagged_u64());
  crs.p = dec.get_tagged_u64();
  crs.M_rej = std::bit_cast<double>(dec.get_tagged_u64());
  dec.expect_done();
  return crs;
}

std::array<u8, 32> BdlopCrs::fingerprint() const {
  return ::lts::fingerprint(encode());
}

BdlopMatrix bdlop_matrix_setup(size_t l1, size_t mid, size_t l2, u64 q,
                               RngHandle &rng) {
  BdlopMatrix m;
  m.q = q;
  m.l1 = l1;
  m.mid = mid;
  m.l2 = l2;
  m.Btop = uniform_matrix(q, l1, mid + l2, rng);
  m.Bbot = uniform_matrix(q, mid, l2, rng);
  return m;
}

BdlopCrs bdlop_setup(size_t l1, size_t l2, size_t n_cols, size_t ell_cols,
                     u64 q, double sigma_1, double sigma_2, u64 p, double M_rej,
                     RngHandle &rng) {
  BdlopCrs crs;
  crs.B1 = bdlop_matrix_setup(l1, n_cols, l2, q, rng);
  crs.B2 = bdlop_matrix_setup(l1, ell_cols, l2, q, rng);
  crs.sigma_1 = sigma_1;
  crs.sigma_2 = sigma_2;
  crs.p = p;
  crs.M_rej = M_rej;
  return crs;
}

ZqVector bdlop_commit(const BdlopMatrix &B, const IntVector &s,
                      const ZqVector &msg) {
  if (s.size() != B.rand_len() || msg.size() != B.mid || msg.q != B.q)
    throw DimensionError("bdlop_commit: dimension mismatch");
  u64 q = B.q;
  ZqVector out(q, B.commit_len());
  for (size_t r = 0; r < B.l1; ++r) {
    i128 acc = s[r];
    for (size_t c = 0; c < B.mid + B.l2; ++c)
      acc += i128(B.Btop.at(r, c)) * s[B.l1 + c];
    out[r] = reduce_i128(acc, q);
  }
  for (size_t r = 0; r < B.mid; ++r) {
    i128 acc = i128(s[B.l1 + r]) + msg[r];
    for (size_t c = 0; c < B.l2; ++c)
      acc += i128(B.Bbot.at(r, c)) * s[B.l1 + B.mid + c];
    out[B.l1 + r] = reduce_i128(acc, q);
  }
  return out;
}

namespace {
constexpr char kAuxTag[] = "AUXCOM";
}

AuxCommitment aux_commit_with(const bytes &payload, const AuxOpening &opening) {
  Xof x;
  x.update(kAuxTag, sizeof(kAuxTag) - 1);
  x.update_len(payload.size());
  x.update(opening.rho.data(), opening.rho.size());
  x.update(payload.data(), payload.size());
  bytes digest = x.squeeze(32);
  AuxCommitment com;
  std::copy(digest.begin(), digest.end(), com.digest.begin());
  return com;
}

std::pair<AuxCommitment, AuxOpening> aux_commit(const bytes &payload,
                                                RngHandle &rng) {
  AuxOpening opening;
  rng.fill(opening.rho.data(), opening.rho.size());
  return {aux_commit_with(payload, opening), opening};
}

bool aux_verify(const AuxCommitment &com, const bytes &payload,
                const AuxOpening &opening) {
  return aux_commit_with(payload, opening) == com;
}

}  // namespace lts
