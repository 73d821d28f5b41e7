#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lts/gadget.hpp"
#include "lts/sampler.hpp"

using namespace lts;
using namespace lts::testing;

TEST_SUITE_BEGIN("samplers");

namespace {

// Independent pmf oracle: rho_sigma(x) = exp(-pi x^2 / sigma^2) normalized
// over the truncation window.
std::vector<double> ref_pmf(double sigma, i64 radius) {
  std::vector<double> p(2 * radius + 1);
  double z = 0;
  for (i64 x = -radius; x <= radius; ++x) {
    p[x + radius] = std::exp(-M_PI * double(x) * double(x) / (sigma * sigma));
    z += p[x + radius];
  }
  for (auto &v : p) v /= z;
  return p;
}

double empirical_std(const std::vector<i64> &xs) {
  double mean = 0;
  for (i64 x : xs) mean += double(x);
  mean /= double(xs.size());
  double var = 0;
  for (i64 x : xs) var += (double(x) - mean) * (double(x) - mean);
  return std::sqrt(var / double(xs.size()));
}

}  // namespace

TEST_CASE("dgauss matches the reference pmf (CDT path, small sigma)") {
  double sigma = 2.5;
  RngHandle rng(u64(10));
  i64 radius = i64(kGaussTail * sigma);
  std::vector<u64> counts(2 * radius + 1, 0);
  const size_t trials = 200000;
  for (size_t i = 0; i < trials; ++i) {
    i64 x = sample_dgauss_z(sigma, rng);
    REQUIRE(std::abs(x) <= radius);
    ++counts[x + radius];
  }
  auto pmf = ref_pmf(sigma, radius);
  for (i64 x = -3; x <= 3; ++x) {
    double want = pmf[x + radius];
    double got = double(counts[x + radius]) / double(trials);
    CHECK(got == doctest::Approx(want).epsilon(0.06));
  }
}

TEST_CASE("dgauss std tracks sigma/sqrt(2 pi) on both sampler paths") {
  RngHandle rng(u64(11));
  for (double sigma : {30.0, 2.0e5}) {  // CDT path, then rejection path
    std::vector<i64> xs(20000);
    for (auto &x : xs) x = sample_dgauss_z(sigma, rng);
    double want = sigma / std::sqrt(2.0 * M_PI);
    CHECK(empirical_std(xs) == doctest::Approx(want).epsilon(0.03));
  }
}

TEST_CASE("centered dgauss concentrates around the center") {
  RngHandle rng(u64(12));
  double sigma = 8.0, c = 13.7;
  double mean = 0;
  const size_t trials = 20000;
  for (size_t i = 0; i < trials; ++i)
    mean += double(sample_dgauss_z_centered(sigma, c, rng));
  mean /= double(trials);
  CHECK(mean == doctest::Approx(c).epsilon(0.01));
}

TEST_CASE("binary trapdoor satisfies B (S; I) = G") {
  RngHandle rng(u64(13));
  size_t n = 4, m = 60;
  u64 q = 97;
  size_t k = ceil_log2(q), w = n * k;
  ZqMatrix B;
  GTrapdoor S;
  trapdoor_gen_binary(n, m, q, rng, B, S);
  REQUIRE(B.cols == m);
  REQUIRE(S.R.rows == m - w);
  REQUIRE(S.R.cols == w);
  ZqMatrix G = gadget_matrix(n, q, w);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < w; ++c) {
      i128 acc = B.at(r, (m - w) + c);
      for (size_t j = 0; j < m - w; ++j)
        acc += i128(B.at(r, j)) * S.R.at(j, c);
      CHECK(reduce_i128(acc, q) == G.at(r, c));
    }
}

TEST_CASE("ternary trapdoor satisfies A R + A' = 0") {
  RngHandle rng(u64(14));
  size_t n = 4, m1 = 30;
  u64 q = next_prime(1 << 16);
  size_t m2 = n * ceil_log2(q);
  ZqMatrix A, Ap;
  GTrapdoor R;
  trapdoor_gen_ternary(n, m1, m2, q, rng, A, Ap, R);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < m2; ++c) {
      i128 acc = Ap.at(r, c);
      for (size_t j = 0; j < m1; ++j)
        acc += i128(A.at(r, j)) * R.R.at(j, c);
      CHECK(reduce_i128(acc, q) == 0);
    }
}

TEST_CASE("sample_d preimages are exact for scalar tags") {
  RngHandle rng(u64(15));
  size_t n = 4, m = 60;
  u64 q = 97;
  ZqMatrix B;
  GTrapdoor S;
  trapdoor_gen_binary(n, m, q, rng, B, S);
  ZqMatrix Bbar = left_block(B, m - n * ceil_log2(q));
  double sigma = 40.0 * trapdoor_quality(S);
  for (int trial = 0; trial < 50; ++trial) {
    ZqVector u = uniform_vector(q, n, rng);
    IntVector v = sample_d(Bbar, S, 1, u, sigma, rng);
    REQUIRE(v.size() == m);
    CHECK(ref_mat_vec(B, to_zq(v, q)) == u);
  }
}

TEST_CASE("sample_d supports nontrivial invertible tags") {
  RngHandle rng(u64(16));
  size_t n = 3, m1 = 40;
  u64 q = next_prime(1 << 16);
  size_t m2 = n * ceil_log2(q);
  ZqMatrix A, Ap;
  GTrapdoor R;
  trapdoor_gen_ternary(n, m1, m2, q, rng, A, Ap, R);
  double sigma = 40.0 * trapdoor_quality(R);
  for (u64 tag : {1ull, 2ull, 7ull}) {
    ZqVector u = uniform_vector(q, n, rng);
    IntVector v = sample_d(A, R, tag, u, sigma, rng);
    // Full matrix: (A | tag*G + A')  since A' = -A R.
    ZqMatrix G = gadget_matrix(n, q, m2);
    for (size_t r = 0; r < n; ++r) {
      i128 acc = 0;
      for (size_t c = 0; c < m1; ++c) acc += i128(A.at(r, c)) * v[c];
      for (size_t c = 0; c < m2; ++c) {
        u64 coeff = add_mod(mul_mod(tag, G.at(r, c), q), Ap.at(r, c), q);
        acc += i128(coeff) * v[m1 + c];
      }
      CHECK(reduce_i128(acc, q) == u[r]);
    }
  }
}

TEST_CASE("sample_d output width tracks the requested sigma") {
  RngHandle rng(u64(17));
  size_t n = 4, m = 60;
  u64 q = 97;
  ZqMatrix B;
  GTrapdoor S;
  trapdoor_gen_binary(n, m, q, rng, B, S);
  ZqMatrix Bbar = left_block(B, m - n * ceil_log2(q));
  double sigma = 60.0 * trapdoor_quality(S);
  std::vector<i64> coords;
  ZqVector u = uniform_vector(q, n, rng);
  for (int trial = 0; trial < 300; ++trial) {
    IntVector v = sample_d(Bbar, S, 1, u, sigma, rng);
    for (size_t i = 0; i < v.size(); ++i) coords.push_back(v[i]);
  }
  // Spherical output: per-coordinate std should be near sigma / sqrt(2 pi).
  double want = sigma / std::sqrt(2.0 * M_PI);
  CHECK(empirical_std(coords) == doctest::Approx(want).epsilon(0.10));
}

TEST_CASE("sample_d rejects widths below the validity floor") {
  RngHandle rng(u64(18));
  size_t n = 4, m = 60;
  u64 q = 97;
  ZqMatrix B;
  GTrapdoor S;
  trapdoor_gen_binary(n, m, q, rng, B, S);
  ZqMatrix Bbar = left_block(B, m - n * ceil_log2(q));
  ZqVector u = uniform_vector(q, n, rng);
  CHECK_THROWS_AS((void)sample_d(Bbar, S, 1, u, 0.5, rng), SamplingError);
  CHECK_THROWS_AS((void)sample_d(Bbar, S, 0, u, 100.0, rng), SamplingError);
}

TEST_CASE("kernel basis: every column annihilates B and they are independent") {
  RngHandle rng(u64(19));
  size_t n = 4, m = 60;
  u64 q = 97;
  ZqMatrix B;
  GTrapdoor S;
  trapdoor_gen_binary(n, m, q, rng, B, S);
  ZqMatrix Bbar = left_block(B, m - n * ceil_log2(q));
  double sigma = 40.0 * trapdoor_quality(S);
  IntMatrix K = sample_kernel_basis(Bbar, S, sigma, rng);
  REQUIRE(K.rows == m);
  REQUIRE(K.cols == m);
  u128 cap = u128(double(sigma) * double(sigma) * double(m));
  ZqMatrix KP(kRankPrime, m, m);
  for (size_t c = 0; c < m; ++c) {
    IntVector col(m, 0);
    for (size_t r = 0; r < m; ++r) {
      col[r] = K.at(r, c);
      KP.at(r, c) = reduce_i128(K.at(r, c), kRankPrime);
    }
    col.bound = i64(inf_norm(col));
    CHECK(l2_norm_sq(col) <= cap);
    ZqVector img = ref_mat_vec(B, to_zq(col, q));
    for (size_t r = 0; r < n; ++r) CHECK(img[r] == 0);
  }
  CHECK(rank_mod(KP) == m);
}

TEST_CASE("rejection_prob matches an independent computation") {
  RngHandle rng(u64(20));
  double sigma2 = 1000.0, M = 1.05;
  for (int trial = 0; trial < 50; ++trial) {
    IntVector v = small_int_vector(16, 200, rng);
    IntVector z = small_int_vector(16, 2000, rng);
    double vv = 0, zv = 0;
    for (size_t i = 0; i < 16; ++i) {
      vv += double(v[i]) * double(v[i]);
      zv += double(z[i]) * double(v[i]);
    }
    double want = std::exp(M_PI * (vv - 2 * zv) / (sigma2 * sigma2)) / M;
    want = std::min(1.0, std::max(0.0, want));
    CHECK(rejection_prob(v, z, sigma2, M) == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("rng determinism and fork independence") {
  RngHandle a(u64(77)), b(u64(77));
  CHECK(a.get_bytes(64) == b.get_bytes(64));
  RngHandle c(u64(77));
  RngHandle f0 = c.fork(0), f1 = c.fork(1);
  CHECK(f0.get_bytes(32) != f1.get_bytes(32));
  // Forking does not disturb the parent stream.
  RngHandle d(u64(77));
  (void)d.fork(5);
  RngHandle e(u64(77));
  CHECK(d.get_bytes(32) == e.get_bytes(32));
}

TEST_SUITE_END();
