#include "lts/sig.hpp"

#include <algorithm>

#include "lts/gadget.hpp"
#include "lts/xof.hpp"

namespace lts {

// ---------------------------------------------------------------------------
// Certificate tag-signature.

void TagSigPublic::encode_into(Encoder &enc) const {
  enc.put(A);
  enc.put(A_prime);
  enc.put(D);
  enc.put(u);
}

TagSigPublic TagSigPublic::decode_from(Decoder &dec) {
  TagSigPublic vk;
  vk.A = dec.get_zq_matrix();
  vk.A_prime = dec.get_zq_matrix();
  vk.D = dec.get_zq_matrix();
  vk.u = dec.get_zq_vector();
  return vk;
}

TagSigPublic tagsig_keygen(const ParamSet &pp, RngHandle &rng,
                           GTrapdoor &sk_out) {
  TagSigPublic vk;
  trapdoor_gen_ternary(pp.n, pp.m_1, pp.m_2, pp.q, rng, vk.A, vk.A_prime,
                       sk_out);
  vk.D = uniform_matrix(pp.q, pp.n, pp.m_B * pp.log2_q_prime(), rng);
  vk.u = uniform_vector(pp.q, pp.n, rng);
  return vk;
}

namespace {

// u + D * msg mod q.
ZqVector tagsig_rhs(const TagSigPublic &vk, const BitVector &msg) {
  if (msg.size() != vk.D.cols)
    throw DimensionError("tagsig: message bit length");
  msg.check_bits();
  ZqVector rhs = vk.u;
  for (size_t r = 0; r < vk.D.rows; ++r) {
    i128 acc = rhs[r];
    for (size_t c = 0; c < vk.D.cols; ++c)
      if (msg[c]) acc += vk.D.at(r, c);
    rhs[r] = reduce_i128(acc, vk.D.q);
  }
  return rhs;
}

}  // namespace

TagSignature tagsig_sign(const TagSigPublic &vk, const GTrapdoor &sk,
                         const ParamSet &pp, u64 id, const BitVector &msg,
                         RngHandle &rng) {
  if (id < 1 || id > pp.N) throw DimensionError("tagsig_sign: bad tag id");
  u64 q = pp.q;
  ZqVector rhs = tagsig_rhs(vk, msg);
  for (size_t attempt = 0; attempt < 64; ++attempt) {
    // Fresh-randomness shift: v1 = w1 + r keeps the signature distribution
    // independent of the trapdoor geometry across queries.
    IntVector r = sample_dgauss_vec(pp.sigma_com, pp.m_1, rng);
    ZqVector target(q, pp.n);
    for (size_t i = 0; i < pp.n; ++i) {
      i128 acc = rhs[i];
      for (size_t c = 0; c < pp.m_1; ++c)
        acc -= i128(vk.A.at(i, c)) * r[c];
      target[i] = reduce_i128(acc, q);
    }
    IntVector w = sample_d(vk.A, sk, id, target, pp.sigma_sign, rng);
    TagSignature sig;
    sig.v1 = IntVector(pp.m_1, 0);
    sig.v2 = IntVector(pp.m_2, 0);
    for (size_t i = 0; i < pp.m_1; ++i) sig.v1[i] = w[i] + r[i];
    for (size_t i = 0; i < pp.m_2; ++i) sig.v2[i] = w[pp.m_1 + i];
    sig.v1.bound = i64(inf_norm(sig.v1));
    sig.v2.bound = i64(inf_norm(sig.v2));
    if (u64(sig.v1.bound) <= pp.beta_1 && u64(sig.v2.bound) <= pp.beta_2)
      return sig;
  }
  throw SamplingError("tagsig_sign: resample budget exhausted");
}

bool tagsig_verify(const TagSigPublic &vk, const ParamSet &pp, u64 id,
                   const BitVector &msg, const TagSignature &sig) {
  if (id < 1 || id > pp.N) return false;
  if (sig.v1.size() != pp.m_1 || sig.v2.size() != pp.m_2) return false;
  if (inf_norm(sig.v1) > pp.beta_1 || inf_norm(sig.v2) > pp.beta_2)
    return false;
  u64 q = pp.q;
  size_t kQ = pp.log2_q();
  ZqVector rhs = tagsig_rhs(vk, msg);
  for (size_t r = 0; r < pp.n; ++r) {
    i128 acc = 0;
    for (size_t c = 0; c < pp.m_1; ++c)
      acc += i128(vk.A.at(r, c)) * sig.v1[c];
    for (size_t c = 0; c < pp.m_2; ++c)
      acc += i128(vk.A_prime.at(r, c)) * sig.v2[c];
    i128 gv = 0;  // (G v2)_r
    for (size_t j = 0; j < kQ; ++j)
      gv += i128(i64(u64(1) << j)) * sig.v2[r * kQ + j];
    acc += i128(id) * (gv % i128(q));
    if (reduce_i128(acc, q) != rhs[r]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// WOTS, w = 16.

namespace {

constexpr size_t kDigestNibbles = 64;
constexpr size_t kChecksumNibbles = 3;  // sum <= 64*15 = 960 < 16^3
static_assert(kDigestNibbles + kChecksumNibbles == kWotsChains);

bytes hash32(std::string_view tag, std::initializer_list<const bytes *> parts,
             u64 extra1 = 0, u64 extra2 = 0) {
  Xof x;
  x.update(tag.data(), tag.size());
  x.update_len(extra1);
  x.update_len(extra2);
  for (const bytes *p : parts) {
    x.update_len(p->size());
    x.update(p->data(), p->size());
  }
  return x.squeeze(32);
}

bytes chain_start(const std::array<u8, 32> &seed, size_t i) {
  bytes s(seed.begin(), seed.end());
  return hash32("WSK", {&s}, i);
}

// Applies chain steps `from` .. `to`-1.
bytes chain_apply(bytes x, size_t i, size_t from, size_t to) {
  for (size_t s = from; s < to; ++s) x = hash32("WCH", {&x}, i, s);
  return x;
}

// 67 nibbles: message digest nibbles then checksum nibbles.
std::array<u8, kWotsChains> wots_digits(const bytes &msg) {
  bytes d = hash32("WMD", {&msg});
  std::array<u8, kWotsChains> out{};
  u64 checksum = 0;
  for (size_t i = 0; i < kDigestNibbles; ++i) {
    out[i] = (d[i / 2] >> (4 * (i % 2))) & 0xF;
    checksum += 15 - out[i];
  }
  for (size_t i = 0; i < kChecksumNibbles; ++i)
    out[kDigestNibbles + i] = (checksum >> (4 * i)) & 0xF;
  return out;
}

bytes wots_vk_from_ends(const std::vector<bytes> &ends) {
  Xof x;
  x.update("WPK", 3);
  for (const bytes &e : ends) x.update(e.data(), e.size());
  return x.squeeze(32);
}

bytes ots_vk_of(const std::array<u8, 32> &seed) {
  std::vector<bytes> ends(kWotsChains);
  for (size_t i = 0; i < kWotsChains; ++i)
    ends[i] = chain_apply(chain_start(seed, i), i, 0, 15);
  return wots_vk_from_ends(ends);
}

// Recomputes the candidate verification key from a signature.
bytes ots_recover_vk(const bytes &msg, const OtsSignature &sig) {
  auto digits = wots_digits(msg);
  std::vector<bytes> ends(kWotsChains);
  for (size_t i = 0; i < kWotsChains; ++i) {
    if (sig.links[i].size() != 32) throw CodecError("ots: bad link length");
    ends[i] = chain_apply(sig.links[i], i, digits[i], 15);
  }
  return wots_vk_from_ends(ends);
}

}  // namespace

void OtsSignature::encode_into(Encoder &enc) const {
  enc.put_tagged_u64(links.size());
  for (const bytes &l : links) enc.put(l);
}

OtsSignature OtsSignature::decode_from(Decoder &dec) {
  OtsSignature sig;
  u64 n = dec.get_tagged_u64();
  if (n != kWotsChains) throw CodecError("ots signature: bad chain count");
  sig.links.resize(n);
  for (auto &l : sig.links) {
    l = dec.get_bytes();
    if (l.size() != 32) throw CodecError("ots signature: bad link length");
  }
  return sig;
}

bytes ots_keygen(OtsSecretKey &sk, RngHandle &rng) {
  rng.fill(sk.seed.data(), sk.seed.size());
  sk.consumed = false;
  return ots_vk_of(sk.seed);
}

OtsSignature ots_sign(OtsSecretKey &sk, const bytes &msg) {
  if (sk.consumed) throw SamplingError("ots_sign: one-time key reuse");
  sk.consumed = true;
  auto digits = wots_digits(msg);
  OtsSignature sig;
  sig.links.resize(kWotsChains);
  for (size_t i = 0; i < kWotsChains; ++i)
    sig.links[i] = chain_apply(chain_start(sk.seed, i), i, 0, digits[i]);
  return sig;
}

bool ots_verify(const bytes &vk, const bytes &msg, const OtsSignature &sig) {
  if (vk.size() != 32 || sig.links.size() != kWotsChains) return false;
  for (const bytes &l : sig.links)
    if (l.size() != 32) return false;
  return ots_recover_vk(msg, sig) == vk;
}

// ---------------------------------------------------------------------------
// Merkle many-time user signature.

namespace {

std::array<u8, 32> to_arr(const bytes &b) {
  std::array<u8, 32> a{};
  std::copy(b.begin(), b.end(), a.begin());
  return a;
}

std::array<u8, 32> leaf_digest(const bytes &ots_vk) {
  return to_arr(hash32("UND", {&ots_vk}, 0));
}

std::array<u8, 32> node_digest(const std::array<u8, 32> &l,
                               const std::array<u8, 32> &r) {
  bytes cat(l.begin(), l.end());
  cat.insert(cat.end(), r.begin(), r.end());
  return to_arr(hash32("UND", {&cat}, 1));
}

std::array<u8, 32> leaf_ots_seed(const std::array<u8, 32> &seed, u32 leaf) {
  bytes s(seed.begin(), seed.end());
  return to_arr(hash32("ULF", {&s}, leaf));
}

// All tree levels, level[0] = leaves.
std::vector<std::vector<std::array<u8, 32>>> build_tree(
    const std::array<u8, 32> &seed) {
  std::vector<std::vector<std::array<u8, 32>>> lv;
  lv.emplace_back();
  for (u32 i = 0; i < kUserSigLeaves; ++i) {
    OtsSecretKey leaf_sk;
    leaf_sk.seed = leaf_ots_seed(seed, i);
    lv[0].push_back(leaf_digest(ots_vk_of(leaf_sk.seed)));
  }
  while (lv.back().size() > 1) {
    const auto &prev = lv.back();
    std::vector<std::array<u8, 32>> next;
    for (size_t i = 0; i < prev.size(); i += 2)
      next.push_back(node_digest(prev[i], prev[i + 1]));
    lv.push_back(std::move(next));
  }
  return lv;
}

}  // namespace

bytes UserSigKey::encode() const {
  Encoder enc;
  enc.put_raw(seed.data(), seed.size());
  enc.put_u32(next_leaf);
  return enc.take();
}

UserSigKey UserSigKey::decode(const bytes &data) {
  Decoder dec(data);
  UserSigKey sk;
  dec.get_raw(sk.seed.data(), sk.seed.size());
  sk.next_leaf = dec.get_u32();
  dec.expect_done();
  return sk;
}

bytes UserSignature::encode() const {
  Encoder enc;
  enc.put_u32(leaf);
  ots.encode_into(enc);
  enc.put_tagged_u64(path.size());
  for (const auto &h : path) enc.put_raw(h.data(), h.size());
  return enc.take();
}

UserSignature UserSignature::decode(const bytes &data) {
  Decoder dec(data);
  UserSignature sig;
  sig.leaf = dec.get_u32();
  sig.ots = OtsSignature::decode_from(dec);
  u64 n = dec.get_tagged_u64();
  if (n != ceil_log2(kUserSigLeaves))
    throw CodecError("user signature: bad path length");
  sig.path.resize(n);
  for (auto &h : sig.path) dec.get_raw(h.data(), h.size());
  dec.expect_done();
  return sig;
}

bytes usersig_keygen(UserSigKey &sk, RngHandle &rng) {
  rng.fill(sk.seed.data(), sk.seed.size());
  sk.next_leaf = 0;
  auto root = build_tree(sk.seed).back()[0];
  return bytes(root.begin(), root.end());
}

UserSignature usersig_sign(UserSigKey &sk, const bytes &msg) {
  if (sk.next_leaf >= kUserSigLeaves)
    throw SamplingError("usersig_sign: all one-time leaves spent");
  UserSignature sig;
  sig.leaf = sk.next_leaf++;
  OtsSecretKey leaf_sk;
  leaf_sk.seed = leaf_ots_seed(sk.seed, sig.leaf);
  sig.ots = ots_sign(leaf_sk, msg);
  auto lv = build_tree(sk.seed);
  u32 idx = sig.leaf;
  for (size_t level = 0; level + 1 < lv.size(); ++level) {
    sig.path.push_back(lv[level][idx ^ 1]);
    idx >>= 1;
  }
  return sig;
}

bool usersig_verify(const bytes &vk, const bytes &msg,
                    const UserSignature &sig) {
  if (vk.size() != 32 || sig.leaf >= kUserSigLeaves) return false;
  if (sig.path.size() != ceil_log2(kUserSigLeaves)) return false;
  if (sig.ots.links.size() != kWotsChains) return false;
  for (const bytes &l : sig.ots.links)
    if (l.size() != 32) return false;
  std::array<u8, 32> node = leaf_digest(ots_recover_vk(msg, sig.ots));
  u32 idx = sig.leaf;
  for (const auto &sib : sig.path) {
    node = (idx & 1) ? node_digest(sib, node) : node_digest(node, sib);
    idx >>= 1;
  }
  return std::equal(node.begin(), node.end(), vk.begin());
}

}  // namespace lts
