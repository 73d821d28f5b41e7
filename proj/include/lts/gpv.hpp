// GPV-style identity-based encryption used by Open.  Identities are the
// hashed one-time verification keys v = H_GPV(vk); plaintexts are group
// member indices in {0, ..., N}, encoded as Delta * id with
// Delta = (q' + (N+1)) / (2(N+1)).

#ifndef LTS_GPV_HPP
#define LTS_GPV_HPP

#include <optional>

#include "lts/params.hpp"
#include "lts/sampler.hpp"

namespace lts {

struct IbeCiphertext {
  ZqVector c;  // length m_B + 1 over q'
};

struct IbeUserKey {
  IntVector e_vk;  // B * e_vk = H_GPV(vk) mod q', length m_B
};

struct IbeEncryption {
  IbeCiphertext ct;
  ZqVector r;      // encryption randomness, n over q'
  IntVector e_c;   // noise, |.| <= B_gpv, length m_B + 1
};

inline u64 ibe_delta(const ParamSet &pp) {
  return (pp.q_prime + (pp.N + 1)) / (2 * (pp.N + 1));
}

// v = H_GPV(vk).
ZqVector ibe_identity(const bytes &vk, const ParamSet &pp);

// Deterministic extraction: the sampler RNG is seeded by hash(osk_seed || vk),
// so repeated extractions of the same identity agree byte for byte.
IbeUserKey ibe_extract(const ZqMatrix &B, const GTrapdoor &S_B,
                       const bytes &osk_seed, const bytes &vk,
                       const ParamSet &pp);

// c = (B^T; v^T) r + e_c + (0; Delta * id), coins returned for the NIZK.
IbeEncryption ibe_encrypt(const ZqMatrix &B, const bytes &vk, u64 id,
                          const ParamSet &pp, RngHandle &rng);

// (-e_vk^T | 1) c, rounded to the nearest multiple of Delta (ties toward
// zero).  nullopt if the decoded index falls outside {0, ..., N}.
std::optional<u64> ibe_decrypt(const IbeCiphertext &ct, const IbeUserKey &key,
                               const ParamSet &pp);

}  // namespace lts

#endif  // LTS_GPV_HPP
