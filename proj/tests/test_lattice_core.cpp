#include <doctest.h>

#include "helpers.hpp"
#include "lts/gadget.hpp"
#include "lts/serial.hpp"

using namespace lts;
using namespace lts::testing;

TEST_SUITE_BEGIN("lattice_core");

TEST_CASE("scalar modular arithmetic against reference") {
  RngHandle rng(u64(1));
  const u64 qs[] = {2, 3, 97, 622849, (u64(1) << 61) - 1,
                    492724548695129ull};
  for (u64 q : qs) {
    for (int i = 0; i < 200; ++i) {
      u64 a = rng.below(q), b = rng.below(q);
      CHECK(mul_mod(a, b, q) == ref_mul_mod(a, b, q));
      CHECK(add_mod(a, b, q) == (a + b) % q);
      CHECK(sub_mod(a, b, q) == (a + q - b) % q);
    }
  }
}

TEST_CASE("inverse and power mod prime") {
  RngHandle rng(u64(2));
  u64 q = 622849;
  for (int i = 0; i < 100; ++i) {
    u64 a = 1 + rng.below(q - 1);
    u64 inv = inv_mod(a, q);
    CHECK(mul_mod(a, inv, q) == 1);
  }
  CHECK(pow_mod(3, q - 1, q) == 1);  // Fermat
  CHECK_THROWS_AS((void)inv_mod(0, q), DimensionError);
}

TEST_CASE("primality and next_prime on known values") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(3));
  CHECK(is_prime_u64((u64(1) << 61) - 1));  // Mersenne prime
  CHECK(!is_prime_u64(1));
  CHECK(!is_prime_u64((u64(1) << 62)));
  CHECK(!is_prime_u64(561));   // Carmichael
  CHECK(!is_prime_u64(3215031751ull));  // strong pseudoprime to small bases
  CHECK(next_prime(173) == 179);
  CHECK(next_prime(1) == 2);
}

TEST_CASE("centered representative range and roundtrip") {
  u64 q = 101;
  for (u64 a = 0; a < q; ++a) {
    i64 c = centered_rep(a, q);
    CHECK(c > -i64(q) / 2 - 1);
    CHECK(c <= i64(q) / 2);
    CHECK(reduce_i128(c, q) == a);
  }
}

TEST_CASE("mixed-modulus operations are construction errors") {
  ZqVector a(97, 4), b(101, 4);
  CHECK_THROWS_AS((void)zq_add(a, b), DimensionError);
  ZqMatrix M(97, 3, 4);
  CHECK_THROWS_AS((void)mat_vec(M, b), DimensionError);
  CHECK_THROWS_AS(ZqVector(1, 3), DimensionError);           // q too small
  CHECK_THROWS_AS(ZqVector((u64(1) << 62) + 1, 3), DimensionError);
}

TEST_CASE("dense and sparse mat_vec agree with the naive oracle") {
  RngHandle rng(u64(3));
  u64 q = 622849;
  ZqMatrix A = uniform_matrix(q, 17, 23, rng);
  ZqVector x = uniform_vector(q, 23, rng);
  ZqVector want = ref_mat_vec(A, x);
  CHECK(mat_vec(A, x) == want);

  SparseBuilder sb(q, A.rows, A.cols);
  for (size_t r = 0; r < A.rows; ++r)
    for (size_t c = 0; c < A.cols; ++c)
      if (A.at(r, c) != 0) sb.add(r, c, A.at(r, c));
  CHECK(mat_vec(sb.freeze(), x) == want);
}

TEST_CASE("sparse builder accumulates duplicate coordinates mod q") {
  u64 q = 97;
  SparseBuilder sb(q, 2, 2);
  sb.add(0, 0, 40);
  sb.add(0, 0, 60);  // 100 mod 97 = 3
  sb.add(1, 1, 97);  // reduces to zero and is dropped
  ZqSparseMatrix M = sb.freeze();
  ZqVector x(q, 2);
  x[0] = 1;
  x[1] = 1;
  ZqVector y = mat_vec(M, x);
  CHECK(y[0] == 3);
  CHECK(y[1] == 0);
}

TEST_CASE("solve_mod recovers planted solutions and flags bad systems") {
  RngHandle rng(u64(4));
  u64 q = 622849;
  // Overdetermined consistent system.
  ZqMatrix A = uniform_matrix(q, 12, 5, rng);
  ZqVector x0 = uniform_vector(q, 5, rng);
  ZqVector b = ref_mat_vec(A, x0);
  ZqVector x;
  REQUIRE(solve_mod(A, b, x));
  CHECK(x == x0);
  // Inconsistent.
  b[0] = add_mod(b[0], 1, q);
  CHECK(!solve_mod(A, b, x));
  // Underdetermined (rank < cols).
  ZqMatrix U(q, 2, 3);
  U.at(0, 0) = 1;
  U.at(1, 1) = 1;
  ZqVector c(q, 2);
  CHECK(!solve_mod(U, c, x));
}

TEST_CASE("rank_mod agrees with Bareiss on small random matrices") {
  RngHandle rng(u64(5));
  u64 q = (u64(1) << 61) - 1;
  for (int trial = 0; trial < 20; ++trial) {
    size_t n = 4 + rng.below(4);
    std::vector<std::vector<i64>> M(n, std::vector<i64>(n));
    ZqMatrix Mq(q, n, n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) {
        i64 v = rng.centered(9);
        M[r][c] = v;
        Mq.at(r, c) = reduce_i128(v, q);
      }
    // Entries are tiny, so rank mod a 61-bit prime equals rational rank.
    CHECK(rank_mod(Mq) == rank_bareiss(M));
  }
}

TEST_CASE("gadget identity G * bin(u) = u exactly over the integers") {
  RngHandle rng(u64(6));
  u64 q = 622849;
  size_t k = ceil_log2(q);
  ZqVector u = uniform_vector(q, 5, rng);
  BitVector bits = bin_decompose(u);
  REQUIRE(bits.size() == 5 * k);
  for (size_t r = 0; r < 5; ++r) {
    u64 acc = 0;  // integer recomposition, no reduction
    for (size_t j = 0; j < k; ++j) acc += u64(bits[r * k + j]) << j;
    CHECK(acc == u[r]);
  }
  CHECK(bin_recompose(bits, q) == u);
}

TEST_CASE("gadget matrix realizes the decomposition") {
  u64 q = 97;
  size_t n = 3, k = ceil_log2(q), m = n * k + 2;  // padded columns
  ZqMatrix G = gadget_matrix(n, q, m);
  RngHandle rng(u64(7));
  ZqVector u = uniform_vector(q, n, rng);
  BitVector bits = bin_decompose(u);
  ZqVector full(q, m);
  for (size_t i = 0; i < bits.size(); ++i) full[i] = bits[i];
  CHECK(ref_mat_vec(G, full) == u);
}

TEST_CASE("range gadget covers every value in [0, 2 beta]") {
  for (u64 beta : {1ull, 2ull, 3ull, 7ull, 12ull, 100ull, 1714ull}) {
    IntVector g = range_gadget(beta);
    CHECK(g.size() == range_gadget_len(beta));
    for (u64 a = 0; a <= 2 * beta; ++a) {
      BitVector bits = range_decompose(a, beta);
      REQUIRE(bits.size() == g.size());
      u64 acc = 0;
      for (size_t i = 0; i < g.size(); ++i)
        if (bits[i]) acc += u64(g[i]);
      CHECK(acc == a);
      CHECK(range_recompose(bits, beta) == a);
    }
    CHECK_THROWS_AS((void)range_decompose(2 * beta + 1, beta),
                    DimensionError);
  }
}

TEST_CASE("codec roundtrips for every primitive type") {
  RngHandle rng(u64(8));
  u64 q = 492724548695129ull;
  Encoder enc;
  ZqVector v = uniform_vector(q, 9, rng);
  ZqMatrix M = uniform_matrix(q, 3, 4, rng);
  IntVector iv = small_int_vector(6, 1000, rng);
  BitVector bv(11);
  for (size_t i = 0; i < bv.size(); ++i) bv[i] = u8(rng.below(2));
  bytes blob = rng.get_bytes(33);
  enc.put(v);
  enc.put(M);
  enc.put(iv);
  enc.put(bv);
  enc.put(blob);
  enc.put_tagged_u64(0xDEADBEEFCAFEull);
  bytes data = enc.take();

  Decoder dec(data);
  CHECK(dec.get_zq_vector() == v);
  CHECK(dec.get_zq_matrix() == M);
  IntVector iv2 = dec.get_int_vector();
  CHECK(iv2.v == iv.v);
  CHECK(dec.get_bit_vector() == bv);
  CHECK(dec.get_bytes() == blob);
  CHECK(dec.get_tagged_u64() == 0xDEADBEEFCAFEull);
  CHECK(dec.done());
}

TEST_CASE("decoder rejects malformed input") {
  Encoder enc;
  enc.put_tagged_u64(7);
  bytes data = enc.take();
  {
    Decoder dec(data);
    CHECK_THROWS_AS((void)dec.get_zq_vector(), CodecError);  // wrong tag
  }
  {
    bytes trunc(data.begin(), data.end() - 1);
    Decoder dec(trunc);
    CHECK_THROWS_AS((void)dec.get_tagged_u64(), CodecError);
  }
  {
    Decoder dec(data);
    (void)dec.get_tagged_u64();
    CHECK_NOTHROW(dec.expect_done());
  }
  // Non-canonical Zq entry (>= q) must be rejected.
  Encoder bad;
  ZqVector w(97, 1);
  w[0] = 5;
  bad.put(w);
  bytes bd = bad.take();
  bd[bd.size() - 1] = 200;  // entry byte now encodes 200 >= 97
  Decoder dec(bd);
  CHECK_THROWS_AS((void)dec.get_zq_vector(), CodecError);
}

TEST_CASE("artifact container detects tampering") {
  bytes payload = {1, 2, 3, 4, 5};
  bytes sealed = seal_artifact(0x08, payload);
  CHECK(open_artifact(0x08, sealed) == payload);
  CHECK_THROWS_AS((void)open_artifact(0x07, sealed), CodecError);  // kind
  bytes corrupt = sealed;
  corrupt[6] ^= 1;
  CHECK_THROWS_AS((void)open_artifact(0x08, corrupt), CodecError);
  bytes trunc(sealed.begin(), sealed.end() - 1);
  CHECK_THROWS_AS((void)open_artifact(0x08, trunc), CodecError);
}

TEST_CASE("IntVector::checked enforces the declared bound") {
  CHECK_NOTHROW((void)IntVector::checked({3, -3, 0}, 3));
  CHECK_THROWS_AS((void)IntVector::checked({4, 0}, 3), DimensionError);
}

TEST_SUITE_END();
