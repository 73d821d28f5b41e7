#include "lts/unruh.hpp"

#include <algorithm>

#include "lts/oracles.hpp"

namespace lts {

namespace {

bytes encode_response(const SigmaResponse &rsp) {
  Encoder enc;
  rsp.encode_into(enc);
  return enc.take();
}

// Canonical input to the challenge-index oracle H1: the full context plus
// every commitment, challenge and response hash across repetitions.
bytes h1_input(const SokContext &ctx, u64 kappa, u64 p,
               const std::vector<NizkRepetition> &reps) {
  Encoder enc;
  enc.put_raw(ctx.crs_fp.data(), ctx.crs_fp.size());
  enc.put(ctx.message);
  enc.put(ctx.extra);
  enc.put_raw(ctx.stmt_fp.data(), ctx.stmt_fp.size());
  enc.put_tagged_u64(kappa);
  enc.put_tagged_u64(p);
  for (const auto &rep : reps) {
    enc.put_raw(rep.com_aux.digest.data(), rep.com_aux.digest.size());
    for (i64 ch : rep.chs) enc.put_i64(ch);
    for (const bytes &h : rep.hs) enc.put(h);
  }
  return enc.take();
}

// Draws kUnruhChallenges pairwise-distinct challenges from [-p, p].
std::array<i64, kUnruhChallenges> draw_challenges(u64 p, RngHandle &rng) {
  std::array<i64, kUnruhChallenges> chs{};
  for (size_t i = 0; i < kUnruhChallenges;) {
    i64 c = rng.centered(p);
    bool dup = false;
    for (size_t j = 0; j < i; ++j) dup = dup || (chs[j] == c);
    if (!dup) chs[i++] = c;
  }
  return chs;
}

}  // namespace

bytes NizkProof::encode() const {
  Encoder enc;
  enc.put_tagged_u64(kappa);
  enc.put_tagged_u64(p);
  enc.put_raw(crs_fp.data(), crs_fp.size());
  for (const auto &rep : reps) {
    enc.put_raw(rep.com_aux.digest.data(), rep.com_aux.digest.size());
    for (i64 ch : rep.chs) enc.put_i64(ch);
    for (const bytes &h : rep.hs) enc.put(h);
    rep.rsp.encode_into(enc);
  }
  return enc.take();
}

NizkProof NizkProof::decode(const bytes &data) {
  Decoder dec(data);
  NizkProof pf;
  pf.kappa = dec.get_tagged_u64();
  pf.p = dec.get_tagged_u64();
  if (pf.kappa == 0 || pf.kappa > 4096)
    throw CodecError("nizk proof: bad repetition count");
  dec.get_raw(pf.crs_fp.data(), pf.crs_fp.size());
  pf.reps.resize(pf.kappa);
  for (auto &rep : pf.reps) {
    dec.get_raw(rep.com_aux.digest.data(), rep.com_aux.digest.size());
    for (auto &ch : rep.chs) ch = dec.get_i64();
    for (auto &h : rep.hs) h = dec.get_bytes();
    rep.rsp = SigmaResponse::decode_from(dec);
  }
  dec.expect_done();
  return pf;
}

NizkProof nizk_prove(const BdlopCrs &crs, const QuadraticStatement &stmt,
                     const ZqVector &wit, const SokContext &ctx,
                     const OracleTagPair &tags, u64 kappa, RngHandle &rng) {
  NizkProof pf;
  pf.kappa = kappa;
  pf.p = crs.p;
  pf.crs_fp = crs.fingerprint();
  pf.reps.resize(kappa);

  // All four responses per repetition, kept until H1 fixes the disclosed one.
  std::vector<std::array<SigmaResponse, kUnruhChallenges>> all_rsp(kappa);

  for (u64 i = 0; i < kappa; ++i) {
    RngHandle rep_rng = rng.fork(i);
    bool done = false;
    for (size_t attempt = 0; attempt < kUnruhRestartBudget && !done;
         ++attempt) {
      ProverState st = sigma_commit(crs, stmt, wit, rep_rng);
      auto chs = draw_challenges(crs.p, rep_rng);
      std::array<SigmaResponse, kUnruhChallenges> rsps;
      bool aborted = false;
      for (size_t j = 0; j < kUnruhChallenges && !aborted; ++j) {
        auto r = sigma_respond(crs, st, chs[j], rep_rng);
        if (!r)
          aborted = true;  // restart the whole repetition
        else
          rsps[j] = std::move(*r);
      }
      if (aborted) continue;
      auto &rep = pf.reps[i];
      rep.com_aux = st.com_aux;
      rep.chs = chs;
      for (size_t j = 0; j < kUnruhChallenges; ++j)
        rep.hs[j] = ro_response_hash(tags.h2, encode_response(rsps[j]));
      all_rsp[i] = std::move(rsps);
      done = true;
    }
    if (!done)
      throw SamplingError("nizk_prove: repetition restart budget exhausted");
  }

  std::vector<u8> J =
      ro_challenge_indices(tags.h1, h1_input(ctx, kappa, crs.p, pf.reps),
                           kappa);
  for (u64 i = 0; i < kappa; ++i) pf.reps[i].rsp = std::move(all_rsp[i][J[i] - 1]);
  return pf;
}

bool nizk_verify(const BdlopCrs &crs, const QuadraticStatement &stmt,
                 const NizkProof &proof, const SokContext &ctx,
                 const OracleTagPair &tags) {
  if (proof.p != crs.p || proof.kappa == 0) return false;
  if (proof.crs_fp != crs.fingerprint()) return false;
  if (proof.reps.size() != proof.kappa) return false;

  std::vector<u8> J = ro_challenge_indices(
      tags.h1, h1_input(ctx, proof.kappa, proof.p, proof.reps), proof.kappa);

  for (u64 i = 0; i < proof.kappa; ++i) {
    const auto &rep = proof.reps[i];
    for (size_t a = 0; a < kUnruhChallenges; ++a) {
      if (std::abs(rep.chs[a]) > i64(proof.p)) return false;
      for (size_t b = a + 1; b < kUnruhChallenges; ++b)
        if (rep.chs[a] == rep.chs[b]) return false;
    }
    size_t j = J[i] - 1;
    if (rep.hs[j] != ro_response_hash(tags.h2, encode_response(rep.rsp)))
      return false;
    if (!sigma_verify(crs, stmt, rep.com_aux, rep.chs[j], rep.rsp))
      return false;
  }
  return true;
}

}  // namespace lts
