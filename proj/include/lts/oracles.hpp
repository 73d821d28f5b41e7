// Deterministic instantiations of the six random oracles of KeyGen step 5.
//
// Every oracle hashes tag || len64(input) || input through SHAKE256 and
// post-processes the stream; the tag strings and chunk rules below are fixed
// constants so independent implementations interoperate bit-exactly.

#ifndef LTS_ORACLES_HPP
#define LTS_ORACLES_HPP

#include <string_view>

#include "lts/zq.hpp"

namespace lts {

namespace oracle_tag {
inline constexpr std::string_view kGpv = "GPV";        // H_GPV
inline constexpr std::string_view kLwe = "LWE";        // H_LWE
inline constexpr std::string_view kSign1 = "SIGN1";    // H^(1)_Sign
inline constexpr std::string_view kSign2 = "SIGN2";    // H^(2)_Sign
inline constexpr std::string_view kClaim1 = "CLAIM1";  // H^(1)_Claim
inline constexpr std::string_view kClaim2 = "CLAIM2";  // H^(2)_Claim
}  // namespace oracle_tag

// H_GPV-style vector oracle.  Entries are 2*ceil(log2 q)-bit little-endian
// chunks of the XOF stream reduced mod q (bias < q / 2^ceil(log2 q) <= 2^-20
// at desk moduli; rejection-free by design).
ZqVector ro_zq_vector(std::string_view tag, const bytes &input, size_t dim,
                      u64 q);

// H_LWE-style matrix oracle; row-major fill with the same chunk rule.
ZqMatrix ro_zq_matrix(std::string_view tag, const bytes &input, size_t rows,
                      size_t cols, u64 q);

// H^(1)-style challenge-index oracle: kappa values in {1,2,3,4}, one 2-bit
// chunk each.
std::vector<u8> ro_challenge_indices(std::string_view tag, const bytes &input,
                                     size_t kappa);

// H^(2)-style length-preserving response hash.
bytes ro_response_hash(std::string_view tag, const bytes &response);

}  // namespace lts

#endif  // LTS_ORACLES_HPP
