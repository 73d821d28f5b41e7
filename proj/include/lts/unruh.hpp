// Generalized Unruh transform: kappa parallel repetitions of the
// Sigma-protocol, four distinct challenges per repetition, all four
// responses computed and hashed (length-preserving H2), and one response
// disclosed per repetition as selected by H1 over the full context.

#ifndef LTS_UNRUH_HPP
#define LTS_UNRUH_HPP

#include <string_view>

#include "lts/zkq.hpp"

namespace lts {

inline constexpr size_t kUnruhChallenges = 4;  // m > k = 3 special soundness
inline constexpr size_t kUnruhRestartBudget = 1024;

// Oracle tags: first = challenge-index oracle H1, second = response hash H2.
struct OracleTagPair {
  std::string_view h1;
  std::string_view h2;
};

// Everything the signature of knowledge binds besides the statement.
struct SokContext {
  std::array<u8, 32> crs_fp{};
  bytes message;             // the signed message M
  bytes extra;               // scheme binding bytes (rho for Sign/Claim)
  std::array<u8, 32> stmt_fp{};
};

struct NizkRepetition {
  AuxCommitment com_aux;
  std::array<i64, kUnruhChallenges> chs{};
  std::array<bytes, kUnruhChallenges> hs;
  SigmaResponse rsp;  // response for challenge chs[J_i]
};

struct NizkProof {
  u64 kappa = 0;
  u64 p = 0;
  std::array<u8, 32> crs_fp{};
  std::vector<NizkRepetition> reps;

  bytes encode() const;
  static NizkProof decode(const bytes &data);
};

// Throws SamplingError if some repetition exhausts its restart budget.
NizkProof nizk_prove(const BdlopCrs &crs, const QuadraticStatement &stmt,
                     const ZqVector &wit, const SokContext &ctx,
                     const OracleTagPair &tags, u64 kappa, RngHandle &rng);

bool nizk_verify(const BdlopCrs &crs, const QuadraticStatement &stmt,
                 const NizkProof &proof, const SokContext &ctx,
                 const OracleTagPair &tags);

}  // namespace lts

#endif  // LTS_UNRUH_HPP
