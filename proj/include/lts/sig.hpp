// Three signature layers:
//   * the certificate tag-signature over modulus q (Eq.-(1) verification),
//   * a Winternitz one-time signature (w = 16) for signature binding,
//   * a 16-leaf Merkle many-time user signature for Join transcripts.

#ifndef LTS_SIG_HPP
#define LTS_SIG_HPP

#include <optional>

#include "lts/params.hpp"
#include "lts/sampler.hpp"
#include "lts/serial.hpp"

namespace lts {

// --------------------------------------------------------------------------
// Certificate tag-signature: [A | id*G_n + A'] (v1; v2) = u + D * msg mod q.

struct TagSigPublic {
  ZqMatrix A;        // n x m_1
  ZqMatrix A_prime;  // n x m_2
  ZqMatrix D;        // n x (m_B * ceil(log q'))
  ZqVector u;        // n

  void encode_into(Encoder &enc) const;
  static TagSigPublic decode_from(Decoder &dec);
};

struct TagSignature {
  IntVector v1;  // ||.||_inf <= beta_1
  IntVector v2;  // ||.||_inf <= beta_2
};

TagSigPublic tagsig_keygen(const ParamSet &pp, RngHandle &rng,
                           GTrapdoor &sk_out);

// id in [1, N]; msg has m_B * ceil(log q') bits.  Resampling budget 64.
TagSignature tagsig_sign(const TagSigPublic &vk, const GTrapdoor &sk,
                         const ParamSet &pp, u64 id, const BitVector &msg,
                         RngHandle &rng);

bool tagsig_verify(const TagSigPublic &vk, const ParamSet &pp, u64 id,
                   const BitVector &msg, const TagSignature &sig);

// --------------------------------------------------------------------------
// Winternitz OTS, w = 16, over the 32-byte message digest (64 nibble chains
// plus 3 checksum chains).  Verification keys are 32 bytes (= ots_vklen).

inline constexpr size_t kWotsChains = 67;

struct OtsSecretKey {
  std::array<u8, 32> seed{};
  bool consumed = false;
};

struct OtsSignature {
  std::vector<bytes> links;  // kWotsChains intermediate chain values

  void encode_into(Encoder &enc) const;
  static OtsSignature decode_from(Decoder &dec);
};

// vk = hash of all chain endpoints.
bytes ots_keygen(OtsSecretKey &sk, RngHandle &rng);
// Throws SamplingError on key reuse.
OtsSignature ots_sign(OtsSecretKey &sk, const bytes &msg);
bool ots_verify(const bytes &vk, const bytes &msg, const OtsSignature &sig);

// --------------------------------------------------------------------------
// User signature for Join: 16-leaf Merkle tree over one-time keys.

inline constexpr size_t kUserSigLeaves = 16;

struct UserSigKey {
  std::array<u8, 32> seed{};
  u32 next_leaf = 0;

  bytes encode() const;
  static UserSigKey decode(const bytes &data);
};

struct UserSignature {
  u32 leaf = 0;
  OtsSignature ots;
  std::vector<std::array<u8, 32>> path;  // sibling digests, leaf to root

  bytes encode() const;
  static UserSignature decode(const bytes &data);
};

// vk = Merkle root, 32 bytes.
bytes usersig_keygen(UserSigKey &sk, RngHandle &rng);
// Throws SamplingError once all leaves are spent.
UserSignature usersig_sign(UserSigKey &sk, const bytes &msg);
bool usersig_verify(const bytes &vk, const bytes &msg,
                    const UserSignature &sig);

}  // namespace lts

#endif  // LTS_SIG_HPP
