// The ten algorithms of the traceable signature scheme, orchestrated over
// the building blocks.  Join is three pure functions over explicit message
// objects; the registry is an append-only value type persisted by the
// keystore.

#ifndef LTS_SCHEME_HPP
#define LTS_SCHEME_HPP

#include <optional>
#include <tuple>

#include "lts/gpv.hpp"
#include "lts/relations.hpp"
#include "lts/sig.hpp"
#include "lts/unruh.hpp"

namespace lts {

// ---------------------------------------------------------------------------
// Key material and artifacts.

struct GroupPublicKey {
  ParamSet pp;
  TagSigPublic tag_vk;  // (A, A', D, u) over q
  ZqMatrix B;           // n x m_B over q'
  ZqMatrix F;           // n x m_F over q'
  BdlopCrs crs_sign;
  BdlopCrs crs_claim;

  bytes encode() const;
  static GroupPublicKey decode(const bytes &data);
  std::array<u8, 32> fingerprint() const;
};

struct GroupManagerKey {
  GTrapdoor R_A;

  bytes encode() const;
  static GroupManagerKey decode(const bytes &data);
};

struct OpeningKey {
  GTrapdoor S_B;
  std::array<u8, 32> seed{};  // deterministic-extraction seed

  bytes encode() const;
  static OpeningKey decode(const bytes &data);
};

struct UserSecret {
  BitVector z;  // m_F bits

  bytes encode() const;
  static UserSecret decode(const bytes &data);
};

struct Certificate {
  u64 id = 0;    // in [1, N]
  ZqVector y;    // pseudonym, m_B over q'
  TagSignature tsig;

  bytes encode() const;
  static Certificate decode(const bytes &data);
};

struct TracingTrapdoor {
  ZqVector x;  // n over q'

  bytes encode() const;
  static TracingTrapdoor decode(const bytes &data);
};

struct GroupSignature {
  std::array<u8, 32> rho{};
  ZqVector c;  // IBE ciphertext, m_B + 1
  ZqVector t;  // tracing tag, m_M
  NizkProof pi;
  bytes vk;    // OTS verification key
  OtsSignature sig;

  bytes encode() const;
  static GroupSignature decode(const bytes &data);
};

struct ClaimProof {
  NizkProof chi;

  bytes encode() const;
  static ClaimProof decode(const bytes &data);
};

// ---------------------------------------------------------------------------
// Join messages and the registry.

struct JoinRequest {
  ZqVector y;        // pseudonym
  bytes user_vk;     // user's ordinary-signature key
  UserSignature sigma_user;  // over bin(y)

  bytes encode() const;
  static JoinRequest decode(const bytes &data);
};

struct PendingUser {
  BitVector z;
  ZqVector x;   // F z
  IntVector e;  // y - B^T x
  ZqVector y;

  bytes encode() const;
  static PendingUser decode(const bytes &data);
};

struct JoinResponse {
  u64 id = 0;
  TagSignature tsig;

  bytes encode() const;
  static JoinResponse decode(const bytes &data);
};

struct RegistryEntry {
  u64 id = 0;
  ZqVector y;
  bytes user_vk;
  UserSignature sigma_user;
  TagSignature tsig;
};

struct Registry {
  std::vector<RegistryEntry> entries;

  u64 st() const { return entries.size(); }  // GM counter = length
  const RegistryEntry *find(u64 id) const;

  bytes encode() const;
  static Registry decode(const bytes &data);
};

struct GroupKeys {
  GroupPublicKey gpk;
  GroupManagerKey gsk;
  OpeningKey osk;
  Registry reg;
};

// ---------------------------------------------------------------------------
// Algorithms.  Setup lives in params.hpp.

GroupKeys keygen(const ParamSet &pp, RngHandle &rng);

// Join step 1 (user): fresh z, x = F z, y = B^T x + e, sign bin(y).
std::pair<JoinRequest, PendingUser> join_user_request(const GroupPublicKey &gpk,
                                                      UserSigKey &user_sk,
                                                      const bytes &user_vk,
                                                      RngHandle &rng);

// Join step 2 (GM): checks the signature, pseudonym freshness and capacity,
// issues cert id = st + 1 and appends the transcript.  nullopt = rejection.
std::optional<JoinResponse> join_gm_process(const GroupPublicKey &gpk,
                                            const GroupManagerKey &gsk,
                                            Registry &reg,
                                            const JoinRequest &req,
                                            RngHandle &rng);

// Join step 3 (user): verifies Eq. (1); nullopt = abort.
std::optional<std::pair<UserSecret, Certificate>> join_user_finalize(
    const GroupPublicKey &gpk, const PendingUser &pending,
    const JoinResponse &resp);

GroupSignature sign(const GroupPublicKey &gpk, const UserSecret &usk,
                    const Certificate &cert, const bytes &message,
                    RngHandle &rng);

bool verify(const GroupPublicKey &gpk, const bytes &message,
            const GroupSignature &sigma);

// nullopt if verification or decryption fails.
std::optional<u64> open(const GroupPublicKey &gpk, const OpeningKey &osk,
                        const bytes &message, const GroupSignature &sigma);

// nullopt if the id is unknown or the linear reconstruction fails its
// bound/uniqueness checks.
std::optional<TracingTrapdoor> reveal(const GroupPublicKey &gpk,
                                      const OpeningKey &osk,
                                      const Registry &reg, u64 id,
                                      RngHandle &rng);

bool trace(const GroupPublicKey &gpk, const TracingTrapdoor &trapdoor,
           const GroupSignature &sigma);

// nullopt if (message, sigma) is invalid or e_t exceeds B_lwe (not the
// signer).
std::optional<ClaimProof> claim(const GroupPublicKey &gpk,
                                const UserSecret &usk, const Certificate &cert,
                                const bytes &message,
                                const GroupSignature &sigma, RngHandle &rng);

bool claim_verify(const GroupPublicKey &gpk, const bytes &message,
                  const GroupSignature &sigma, const ClaimProof &proof);

// Audit helper: open, then cross-check against the registry.  `registered`
// is false when the opened id never joined (surfaced as a warning upstream).
struct OpenAudit {
  std::optional<u64> id;
  bool registered = false;
};
OpenAudit open_audit(const GroupPublicKey &gpk, const OpeningKey &osk,
                     const Registry &reg, const bytes &message,
                     const GroupSignature &sigma);

// x = F z mod q' (the member's tracing secret).
ZqVector member_trapdoor(const GroupPublicKey &gpk, const UserSecret &usk);

}  // namespace lts

#endif  // LTS_SCHEME_HPP
