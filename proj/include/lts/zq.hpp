// Exact modular linear algebra over explicit prime moduli.
//
// All entries are kept as canonical representatives in [0, q); a signed
// ("centered") view in (-q/2, q/2] is computed on demand.  Mixed-modulus
// arithmetic is a construction-time error, never a silent wraparound, and
// all products go through 128-bit intermediates.

#ifndef LTS_ZQ_HPP
#define LTS_ZQ_HPP

#include <cstdlib>

#include "lts/common.hpp"

namespace lts {

// ---------------------------------------------------------------------------
// Scalar helpers.

inline void check_modulus(u64 q) {
  if (q < 2 || q > kMaxModulus)
    throw DimensionError("zq: modulus out of supported range");
}

inline u64 add_mod(u64 a, u64 b, u64 q) {
  u64 s = a + b;  // a, b < q <= 2^62, no overflow
  return s >= q ? s - q : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 q) { return a >= b ? a - b : a + q - b; }

inline u64 neg_mod(u64 a, u64 q) { return a == 0 ? 0 : q - a; }

inline u64 mul_mod(u64 a, u64 b, u64 q) {
  return static_cast<u64>((u128(a) * b) % q);
}

// Reduces an arbitrary signed 128-bit value to [0, q).
inline u64 reduce_i128(i128 v, u64 q) {
  i128 r = v % i128(q);
  if (r < 0) r += q;
  return static_cast<u64>(r);
}

// Centered representative in (-q/2, q/2].
inline i64 centered_rep(u64 a, u64 q) {
  return a * 2 > q ? static_cast<i64>(a) - static_cast<i64>(q)
                   : static_cast<i64>(a);
}

u64 pow_mod(u64 base, u64 exp, u64 q);
// Inverse mod prime q; throws if a == 0 mod q.
u64 inv_mod(u64 a, u64 q);
bool is_prime_u64(u64 n);
u64 next_prime(u64 n);  // smallest prime > n

// ---------------------------------------------------------------------------
// Vectors and matrices.

struct ZqVector {
  u64 q = 0;
  std::vector<u64> v;

  ZqVector() = default;
  ZqVector(u64 modulus, size_t dim) : q(modulus), v(dim, 0) {
    check_modulus(modulus);
  }
  size_t size() const { return v.size(); }
  u64 &operator[](size_t i) { return v[i]; }
  u64 operator[](size_t i) const { return v[i]; }
  void check_canonical() const {
    for (u64 x : v)
      if (x >= q) throw DimensionError("zq: entry not canonical");
  }
  bool operator==(const ZqVector &o) const { return q == o.q && v == o.v; }
};

struct ZqMatrix {
  u64 q = 0;
  size_t rows = 0, cols = 0;
  std::vector<u64> a;  // row-major

  ZqMatrix() = default;
  ZqMatrix(u64 modulus, size_t r, size_t c)
      : q(modulus), rows(r), cols(c), a(r * c, 0) {
    check_modulus(modulus);
  }
  u64 &at(size_t r, size_t c) { return a[r * cols + c]; }
  u64 at(size_t r, size_t c) const { return a[r * cols + c]; }
  bool operator==(const ZqMatrix &o) const {
    return q == o.q && rows == o.rows && cols == o.cols && a == o.a;
  }
};

// Sparse row-major matrix used for the large compiled statements, where a
// dense desk-scale A would not fit in memory.
struct ZqSparseMatrix {
  u64 q = 0;
  size_t rows = 0, cols = 0;
  std::vector<u32> row_start;  // rows+1 offsets into col/val
  std::vector<u32> col;
  std::vector<u64> val;

  size_t nnz() const { return col.size(); }
};

// Builder that accumulates (row, col, coeff) entries then freezes to CSR.
struct SparseBuilder {
  u64 q = 0;
  size_t rows = 0, cols = 0;
  std::vector<u64> keys;  // row * cols + col, with parallel vals
  std::vector<u64> vals;

  SparseBuilder(u64 modulus, size_t r, size_t c) : q(modulus), rows(r), cols(c) {}
  void add(size_t r, size_t c, u64 coeff);
  ZqSparseMatrix freeze() const;
};

struct IntVector {
  std::vector<i64> v;
  i64 bound = 0;  // declared infinity-norm bound

  IntVector() = default;
  IntVector(size_t dim, i64 b) : v(dim, 0), bound(b) {}
  // Construction-time bound check per the lattice_core contract.
  static IntVector checked(std::vector<i64> entries, i64 b);
  size_t size() const { return v.size(); }
  i64 &operator[](size_t i) { return v[i]; }
  i64 operator[](size_t i) const { return v[i]; }
};

struct BitVector {
  std::vector<u8> v;

  BitVector() = default;
  explicit BitVector(size_t dim) : v(dim, 0) {}
  size_t size() const { return v.size(); }
  u8 &operator[](size_t i) { return v[i]; }
  u8 operator[](size_t i) const { return v[i]; }
  void check_bits() const {
    for (u8 b : v)
      if (b > 1) throw DimensionError("bitvector: entry not a bit");
  }
  bool operator==(const BitVector &o) const { return v == o.v; }
};

// ---------------------------------------------------------------------------
// Norms (exact; l2 returned squared to stay in integers).

u64 inf_norm(const IntVector &x);
u128 l2_norm_sq(const IntVector &x);

// ---------------------------------------------------------------------------
// Arithmetic.  All operations check moduli and dimensions.

ZqVector zq_add(const ZqVector &x, const ZqVector &y);
ZqVector zq_sub(const ZqVector &x, const ZqVector &y);
ZqVector zq_scale(u64 c, const ZqVector &x);
ZqVector mat_vec(const ZqMatrix &A, const ZqVector &x);
ZqVector mat_vec(const ZqSparseMatrix &A, const ZqVector &x);
// A * x for small signed x (e.g. trapdoor or Gaussian vectors).
ZqVector mat_vec_int(const ZqMatrix &A, const IntVector &x);
ZqVector transpose_vec(const ZqMatrix &A, const ZqVector &x);  // A^T * x
ZqMatrix mat_mul(const ZqMatrix &A, const ZqMatrix &B);

// Converts a signed vector to canonical form mod q (entries reduced).
ZqVector to_zq(const IntVector &x, u64 q);
ZqVector bits_to_zq(const BitVector &x, u64 q);
// Centered view.
IntVector to_centered(const ZqVector &x);

// Rank of A over Z_q by Gaussian elimination (q prime).
size_t rank_mod(const ZqMatrix &A);
// Solves A * x = b over Z_q (q prime).  Returns false if inconsistent or
// the solution is not unique (rank < cols).
bool solve_mod(const ZqMatrix &A, const ZqVector &b, ZqVector &x_out);

// Exact rank over the rationals via fraction-free (Bareiss) elimination;
// intended for small test-oracle matrices only (entries as i128 internally).
size_t rank_bareiss(const std::vector<std::vector<i64>> &A);

ZqVector uniform_vector(u64 q, size_t dim, class RngHandle &rng);
ZqMatrix uniform_matrix(u64 q, size_t rows, size_t cols, class RngHandle &rng);

}  // namespace lts

#endif  // LTS_ZQ_HPP
