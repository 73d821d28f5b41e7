// Size accounting: reports concrete artifact sizes for the desk preset and
// estimated signature sizes across lambda, next to the asymptotic
// O(lambda^3 log^3 lambda) reference.  Reported, never asserted — the
// asymptotic claims have no reproducible concrete numbers.

#include <cmath>
#include <cstdio>

#include "lts/relations.hpp"
#include "lts/scheme.hpp"

using namespace lts;

namespace {

// Byte size of one encoded SigmaResponse at the given shape.
size_t response_bytes(const ParamSet &pp, size_t n_prime, size_t n_triples) {
  size_t w = zq_entry_width(pp.q);
  auto vec = [&](size_t dim) { return 1 + 8 + 4 + dim * w; };
  auto ivec = [&](size_t dim) { return 1 + 4 + 8 + dim * 8; };
  size_t c1 = vec(pp.l1 + n_prime);
  size_t c3 = vec(pp.l1 + n_triples);
  size_t z0 = vec(n_prime);
  size_t z1 = ivec(pp.l1 + pp.l2 + n_prime);
  size_t z2 = ivec(pp.l1 + pp.l2 + n_triples);
  return c1 + c3 + 32 + z0 + z1 + z2;
}

// Estimated NIZK proof size: kappa repetitions, each carrying the auxiliary
// commitment, four challenges, four length-preserving response hashes, and
// one disclosed response.
size_t proof_bytes(const ParamSet &pp, size_t n_prime, size_t n_triples) {
  size_t rsp = response_bytes(pp, n_prime, n_triples);
  size_t per_rep = 32 + 4 * 8 + 4 * (1 + 4 + rsp) + rsp;
  return 9 + 9 + 32 + pp.kappa * per_rep;
}

void report_preset(u64 lambda, u64 N) {
  ParamSet pp = setup(lambda, N);
  LayoutDims sd = sign_layout_dims(pp);
  size_t pi = proof_bytes(pp, sd.n_prime, sd.n_triples);
  size_t sig = 32 + (9 + 4 + (pp.m_B + 1) * zq_entry_width(pp.q_prime)) +
               (9 + 4 + pp.m_M * zq_entry_width(pp.q_prime)) + pi + 32 +
               67 * 32;
  double lam = double(lambda);
  double asym = lam * lam * lam * std::pow(std::log2(lam), 3.0);
  std::printf("%8llu %5llu %10llu %14llu %10zu %10zu %14zu %12.0f\n",
              (unsigned long long)lambda, (unsigned long long)N,
              (unsigned long long)pp.q_prime, (unsigned long long)pp.q,
              sd.n_prime, sd.n_triples, sig, asym);
}

}  // namespace

int main() {
  std::printf("estimated signature sizes by security parameter\n");
  std::printf("%8s %5s %10s %14s %10s %10s %14s %12s\n", "lambda", "N",
              "q_prime", "q", "n_prime", "|S|", "sig_bytes",
              "l^3 log^3 l");
  for (u64 lambda : {8, 12, 16, 24, 32}) report_preset(lambda, 7);

  std::printf("\nconcrete artifact sizes at the desk preset (lambda=16, N=7)\n");
  ParamSet pp = setup_desk();
  RngHandle rng(u64(7));
  GroupKeys ks = keygen(pp, rng);
  std::printf("  %-22s %10zu bytes\n", "params", pp.encode().size());
  std::printf("  %-22s %10zu bytes\n", "gpk", ks.gpk.encode().size());
  std::printf("  %-22s %10zu bytes\n", "gsk", ks.gsk.encode().size());
  std::printf("  %-22s %10zu bytes\n", "osk", ks.osk.encode().size());

  UserSigKey user_sk;
  bytes user_vk = usersig_keygen(user_sk, rng);
  auto [req, pending] = join_user_request(ks.gpk, user_sk, user_vk, rng);
  auto resp = join_gm_process(ks.gpk, ks.gsk, ks.reg, req, rng);
  auto fin = join_user_finalize(ks.gpk, pending, *resp);
  std::printf("  %-22s %10zu bytes\n", "join request", req.encode().size());
  std::printf("  %-22s %10zu bytes\n", "certificate",
              fin->second.encode().size());
  std::printf("  %-22s %10zu bytes\n", "user secret",
              fin->first.encode().size());

  bytes msg = {'s', 'z'};
  GroupSignature sigma = sign(ks.gpk, fin->first, fin->second, msg, rng);
  std::printf("  %-22s %10zu bytes\n", "group signature",
              sigma.encode().size());
  auto proof = claim(ks.gpk, fin->first, fin->second, msg, sigma, rng);
  if (proof)
    std::printf("  %-22s %10zu bytes\n", "claim proof",
                proof->encode().size());
  return 0;
}
