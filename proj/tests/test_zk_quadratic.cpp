#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lts/zkq.hpp"

using namespace lts;
using namespace lts::testing;

TEST_SUITE_BEGIN("zk_quadratic");

namespace {

struct Fixture {
  u64 q = next_prime(u64(1) << 22);
  size_t l1 = 4, l2 = 4, n_prime = 8;
  BdlopCrs crs;
  QuadraticStatement stmt;
  ZqVector wit;

  explicit Fixture(u64 seed) : wit(q, 0) {
    RngHandle rng(seed);
    std::vector<QuadraticTriple> S = {{6, 0, 1}, {7, 2, 3}};
    size_t l = 2 * l1 + 2 * l2 + n_prime + S.size();
    double sigma_1 = 3.2;
    double sigma_2 = 2.0 * 2 * double(l) * std::log(double(l)) * sigma_1;
    double M = std::exp(1.0 / (std::log(double(l)) * std::log(double(l))));
    crs = bdlop_setup(l1, l2, n_prime, S.size(), q, sigma_1, sigma_2, 2, M,
                      rng);

    ZqVector x(q, n_prime);
    for (size_t i = 0; i < 6; ++i) x[i] = rng.below(q);
    x[6] = mul_mod(x[0], x[1], q);
    x[7] = mul_mod(x[2], x[3], q);
    wit = x;

    ZqMatrix A = uniform_matrix(q, 5, n_prime, rng);
    SparseBuilder sb(q, A.rows, A.cols);
    for (size_t r = 0; r < A.rows; ++r)
      for (size_t c = 0; c < A.cols; ++c)
        if (A.at(r, c) != 0) sb.add(r, c, A.at(r, c));
    stmt.A = sb.freeze();
    stmt.y = ref_mat_vec(A, x);
    stmt.S = S;
  }

  // Run commit/respond until the rejection sampler accepts.
  std::pair<ProverState, SigmaResponse> transcript(i64 ch, RngHandle &rng) {
    for (int attempt = 0; attempt < 256; ++attempt) {
      ProverState st = sigma_commit(crs, stmt, wit, rng);
      if (auto rsp = sigma_respond(crs, st, ch, rng))
        return {std::move(st), std::move(*rsp)};
    }
    FAIL("rejection sampler never accepted");
    throw std::logic_error("unreachable");
  }
};

}  // namespace

TEST_CASE("witness_check accepts the planted witness and rejects others") {
  Fixture f(u64(50));
  CHECK(witness_check(f.stmt, f.wit));
  ZqVector bad = f.wit;
  bad[6] = add_mod(bad[6], 1, f.q);  // breaks the quadratic clause
  CHECK(!witness_check(f.stmt, bad));
  ZqVector bad2 = f.wit;
  bad2[4] = add_mod(bad2[4], 1, f.q);  // breaks the linear clause
  CHECK(!witness_check(f.stmt, bad2));
}

TEST_CASE("completeness for every challenge in [-p, p]") {
  Fixture f(u64(51));
  RngHandle rng(u64(510));
  for (i64 ch = -2; ch <= 2; ++ch) {
    auto [st, rsp] = f.transcript(ch, rng);
    CHECK(sigma_verify(f.crs, f.stmt, st.com_aux, ch, rsp));
  }
}

TEST_CASE("a transcript does not verify under a different challenge") {
  Fixture f(u64(52));
  RngHandle rng(u64(520));
  auto [st, rsp] = f.transcript(1, rng);
  REQUIRE(sigma_verify(f.crs, f.stmt, st.com_aux, 1, rsp));
  CHECK(!sigma_verify(f.crs, f.stmt, st.com_aux, 2, rsp));
  CHECK(!sigma_verify(f.crs, f.stmt, st.com_aux, -1, rsp));
}

TEST_CASE("tampered responses are rejected") {
  Fixture f(u64(53));
  RngHandle rng(u64(530));
  auto [st, rsp] = f.transcript(2, rng);
  REQUIRE(sigma_verify(f.crs, f.stmt, st.com_aux, 2, rsp));

  SigmaResponse t1 = rsp;
  t1.z0[0] = add_mod(t1.z0[0], 1, f.q);
  CHECK(!sigma_verify(f.crs, f.stmt, st.com_aux, 2, t1));

  SigmaResponse t2 = rsp;
  t2.z1[0] += 1;
  CHECK(!sigma_verify(f.crs, f.stmt, st.com_aux, 2, t2));

  SigmaResponse t3 = rsp;
  t3.c1[0] = add_mod(t3.c1[0], 1, f.q);
  CHECK(!sigma_verify(f.crs, f.stmt, st.com_aux, 2, t3));

  AuxCommitment wrong = st.com_aux;
  wrong.digest[0] ^= 1;
  CHECK(!sigma_verify(f.crs, f.stmt, wrong, 2, rsp));
}

TEST_CASE("norm bound scales with the declared parameters") {
  Fixture f(u64(54));
  size_t mid = f.n_prime;
  double want = 2.0 * std::sqrt(double(f.l1 + f.l2 + mid)) *
                (f.crs.sigma_2 + double(f.crs.p) * f.crs.sigma_1);
  CHECK(sigma_norm_bound(f.crs, mid) == doctest::Approx(want));
}

TEST_CASE("three accepting transcripts extract the witness") {
  Fixture f(u64(55));
  RngHandle rng(u64(550));
  // Need one commitment answered at three distinct challenges; retry the
  // whole commitment when any of the three responses aborts.
  for (int attempt = 0; attempt < 1024; ++attempt) {
    ProverState st = sigma_commit(f.crs, f.stmt, f.wit, rng);
    auto r0 = sigma_respond(f.crs, st, -1, rng);
    auto r1 = sigma_respond(f.crs, st, 0, rng);
    auto r2 = sigma_respond(f.crs, st, 2, rng);
    if (!r0 || !r1 || !r2) continue;
    REQUIRE(sigma_verify(f.crs, f.stmt, st.com_aux, -1, *r0));
    REQUIRE(sigma_verify(f.crs, f.stmt, st.com_aux, 0, *r1));
    REQUIRE(sigma_verify(f.crs, f.stmt, st.com_aux, 2, *r2));
    auto x = sigma_extract(f.stmt, -1, *r0, 0, *r1, 2, *r2);
    REQUIRE(x.has_value());
    CHECK(*x == f.wit);
    CHECK(witness_check(f.stmt, *x));
    return;
  }
  FAIL("no triple of accepting transcripts found");
}

TEST_CASE("extraction refuses inconsistent transcripts") {
  Fixture f(u64(56));
  RngHandle rng(u64(560));
  auto [sa, ra] = f.transcript(-1, rng);
  auto [sb, rb] = f.transcript(0, rng);
  auto [sc, rc] = f.transcript(1, rng);
  // Transcripts from unrelated commitments should not extract a witness.
  auto x = sigma_extract(f.stmt, -1, ra, 0, rb, 1, rc);
  if (x) CHECK(witness_check(f.stmt, *x));  // only a valid witness may pass
}

TEST_CASE("statement serialization roundtrips with a stable fingerprint") {
  Fixture f(u64(57));
  bytes data = f.stmt.encode();
  QuadraticStatement back = QuadraticStatement::decode(data);
  CHECK(back.encode() == data);
  CHECK(back.fingerprint() == f.stmt.fingerprint());
  CHECK(witness_check(back, f.wit));
  Fixture g(u64(58));
  CHECK(g.stmt.fingerprint() != f.stmt.fingerprint());
}

TEST_CASE("response serialization roundtrips") {
  Fixture f(u64(59));
  RngHandle rng(u64(590));
  auto [st, rsp] = f.transcript(1, rng);
  Encoder enc;
  rsp.encode_into(enc);
  bytes data = enc.take();
  Decoder dec(data);
  SigmaResponse back = SigmaResponse::decode_from(dec);
  CHECK(dec.done());
  CHECK(sigma_verify(f.crs, f.stmt, st.com_aux, 1, back));
}

TEST_SUITE_END();
