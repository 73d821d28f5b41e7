#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lts/gpv.hpp"
#include "lts/scheme.hpp"

using namespace lts;
using namespace lts::testing;

TEST_SUITE_BEGIN("gpv_ibe");

namespace {

struct IbeFixture {
  ParamSet pp;
  GroupKeys keys;

  IbeFixture() : pp(setup_desk()) {
    RngHandle rng(u64(80));
    keys = keygen(pp, rng);
  }

  static const IbeFixture &get() {
    static IbeFixture f;
    return f;
  }
};

}  // namespace

TEST_CASE("extracted keys are honest preimages: B e_vk = H_GPV(vk) mod q'") {
  const IbeFixture &f = IbeFixture::get();
  RngHandle rng(u64(81));
  bytes vk = rng.get_bytes(32);
  IbeUserKey key = ibe_extract(f.keys.gpk.B, f.keys.osk.S_B, bytes(
      f.keys.osk.seed.begin(), f.keys.osk.seed.end()), vk, f.pp);
  REQUIRE(key.e_vk.size() == f.pp.m_B);
  ZqVector v = ibe_identity(vk, f.pp);
  CHECK(ref_mat_vec(f.keys.gpk.B, to_zq(key.e_vk, f.pp.q_prime)) == v);
}

TEST_CASE("extraction is deterministic per identity") {
  const IbeFixture &f = IbeFixture::get();
  bytes seed(f.keys.osk.seed.begin(), f.keys.osk.seed.end());
  RngHandle rng(u64(82));
  bytes vk = rng.get_bytes(32);
  IbeUserKey a = ibe_extract(f.keys.gpk.B, f.keys.osk.S_B, seed, vk, f.pp);
  IbeUserKey b = ibe_extract(f.keys.gpk.B, f.keys.osk.S_B, seed, vk, f.pp);
  CHECK(a.e_vk.v == b.e_vk.v);
  bytes vk2 = rng.get_bytes(32);
  IbeUserKey c = ibe_extract(f.keys.gpk.B, f.keys.osk.S_B, seed, vk2, f.pp);
  CHECK(a.e_vk.v != c.e_vk.v);
}

TEST_CASE("encrypt/decrypt roundtrips every payload in {0, ..., N}") {
  const IbeFixture &f = IbeFixture::get();
  RngHandle rng(u64(83));
  bytes seed(f.keys.osk.seed.begin(), f.keys.osk.seed.end());
  for (u64 id = 0; id <= f.pp.N; ++id) {
    for (int trial = 0; trial < 20; ++trial) {
      bytes vk = rng.get_bytes(32);
      IbeEncryption enc = ibe_encrypt(f.keys.gpk.B, vk, id, f.pp, rng);
      CHECK(inf_norm(enc.e_c) <= f.pp.B_gpv);
      IbeUserKey key =
          ibe_extract(f.keys.gpk.B, f.keys.osk.S_B, seed, vk, f.pp);
      auto dec = ibe_decrypt(enc.ct, key, f.pp);
      REQUIRE(dec.has_value());
      CHECK(*dec == id);
    }
  }
}

TEST_CASE("ciphertexts verify the documented linear shape") {
  // c = (B^T; v^T) r + e_c + (0; Delta id): recompute from the coins.
  const IbeFixture &f = IbeFixture::get();
  RngHandle rng(u64(84));
  bytes vk = rng.get_bytes(32);
  u64 id = 5;
  IbeEncryption enc = ibe_encrypt(f.keys.gpk.B, vk, id, f.pp, rng);
  ZqVector v = ibe_identity(vk, f.pp);
  u64 qp = f.pp.q_prime;
  for (size_t i = 0; i < f.pp.m_B; ++i) {
    i128 acc = enc.e_c[i];
    for (size_t r = 0; r < f.pp.n; ++r)
      acc += i128(f.keys.gpk.B.at(r, i)) * enc.r[r];
    CHECK(enc.ct.c[i] == reduce_i128(acc, qp));
  }
  i128 last = enc.e_c[f.pp.m_B] + i128(ibe_delta(f.pp)) * id;
  for (size_t r = 0; r < f.pp.n; ++r) last += i128(v[r]) * enc.r[r];
  CHECK(enc.ct.c[f.pp.m_B] == reduce_i128(last, qp));
}

TEST_CASE("decryption under the wrong identity key fails or mismatches") {
  const IbeFixture &f = IbeFixture::get();
  RngHandle rng(u64(85));
  bytes seed(f.keys.osk.seed.begin(), f.keys.osk.seed.end());
  bytes vk_a = rng.get_bytes(32);
  bytes vk_b = rng.get_bytes(32);
  IbeEncryption enc = ibe_encrypt(f.keys.gpk.B, vk_a, 3, f.pp, rng);
  IbeUserKey wrong =
      ibe_extract(f.keys.gpk.B, f.keys.osk.S_B, seed, vk_b, f.pp);
  auto dec = ibe_decrypt(enc.ct, wrong, f.pp);
  CHECK((!dec.has_value() || *dec != 3));
}

TEST_CASE("a payload shifted by q'/2 decodes to out-of-range (nullopt)") {
  const IbeFixture &f = IbeFixture::get();
  RngHandle rng(u64(86));
  bytes seed(f.keys.osk.seed.begin(), f.keys.osk.seed.end());
  bytes vk = rng.get_bytes(32);
  IbeEncryption enc = ibe_encrypt(f.keys.gpk.B, vk, 0, f.pp, rng);
  IbeCiphertext bad = enc.ct;
  size_t last = bad.c.size() - 1;
  bad.c[last] = add_mod(bad.c[last], f.pp.q_prime / 2, f.pp.q_prime);
  IbeUserKey key = ibe_extract(f.keys.gpk.B, f.keys.osk.S_B, seed, vk, f.pp);
  CHECK(!ibe_decrypt(bad, key, f.pp).has_value());
}

TEST_CASE("delta leaves headroom for the noise margin") {
  const IbeFixture &f = IbeFixture::get();
  u64 delta = ibe_delta(f.pp);
  // Payloads never wrap: the largest encoded value N*Delta stays below q'.
  CHECK(delta * f.pp.N < f.pp.q_prime);
  // Typical decryption noise <e_vk, e_c> has per-term std about
  // (alpha q' / sqrt(2 pi)) * (sigma_gpv / sqrt(2 pi)); six standard
  // deviations of the sum must fit inside the Delta/2 decision radius.
  double term_std = (f.pp.alpha_gpv * double(f.pp.q_prime) / std::sqrt(2 * M_PI)) *
                    (f.pp.sigma_gpv / std::sqrt(2 * M_PI));
  double noise = 6.0 * term_std * std::sqrt(double(f.pp.m_B));
  CHECK(noise < double(delta) / 2.0);
}

TEST_SUITE_END();
