#include "lts/zq.hpp"

#include <algorithm>
#include <numeric>

#include "lts/rng.hpp"

namespace lts {

u64 pow_mod(u64 base, u64 exp, u64 q) {
  u64 r = 1;
  base %= q;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 q) {
  a %= q;
  if (a == 0) throw DimensionError("zq: inverse of zero");
  return pow_mod(a, q - 2, q);  // q prime throughout the library
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic Miller-Rabin base set for 64-bit integers.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

u64 next_prime(u64 n) {
  u64 c = n + 1;
  if (c <= 2) return 2;
  if ((c & 1) == 0) ++c;
  while (!is_prime_u64(c)) c += 2;
  return c;
}

void SparseBuilder::add(size_t r, size_t c, u64 coeff) {
  if (r >= rows || c >= cols) throw DimensionError("sparse: index out of range");
  if (coeff == 0) return;
  keys.push_back(static_cast<u64>(r) * cols + c);
  vals.push_back(coeff % q);
}

ZqSparseMatrix SparseBuilder::freeze() const {
  std::vector<size_t> order(keys.size());
  std::iota(order.begin(), order.end(), size_t(0));
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return keys[a] < keys[b]; });
  ZqSparseMatrix m;
  m.q = q;
  m.rows = rows;
  m.cols = cols;
  m.row_start.assign(rows + 1, 0);
  m.col.reserve(keys.size());
  m.val.reserve(keys.size());
  size_t i = 0;
  while (i < order.size()) {
    u64 key = keys[order[i]];
    u64 acc = 0;
    while (i < order.size() && keys[order[i]] == key) {
      acc = add_mod(acc, vals[order[i]], q);
      ++i;
    }
    if (acc != 0) {
      m.col.push_back(static_cast<u32>(key % cols));
      m.val.push_back(acc);
      ++m.row_start[key / cols + 1];
    }
  }
  for (size_t r = 0; r < rows; ++r) m.row_start[r + 1] += m.row_start[r];
  return m;
}

IntVector IntVector::checked(std::vector<i64> entries, i64 b) {
  IntVector out;
  out.v = std::move(entries);
  out.bound = b;
  for (i64 x : out.v)
    if (std::abs(x) > b)
      throw DimensionError("intvector: entry exceeds declared bound");
  return out;
}

u64 inf_norm(const IntVector &x) {
  u64 m = 0;
  for (i64 e : x.v) m = std::max<u64>(m, e < 0 ? u64(-e) : u64(e));
  return m;
}

u128 l2_norm_sq(const IntVector &x) {
  u128 s = 0;
  for (i64 e : x.v) s += u128(i128(e) * e);
  return s;
}

namespace {
void check_same(const ZqVector &x, const ZqVector &y) {
  if (x.q != y.q) throw DimensionError("zq: mixed moduli");
  if (x.size() != y.size()) throw DimensionError("zq: dimension mismatch");
}
}  // namespace

ZqVector zq_add(const ZqVector &x, const ZqVector &y) {
  check_same(x, y);
  ZqVector out(x.q, x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = add_mod(x[i], y[i], x.q);
  return out;
}

ZqVector zq_sub(const ZqVector &x, const ZqVector &y) {
  check_same(x, y);
  ZqVector out(x.q, x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = sub_mod(x[i], y[i], x.q);
  return out;
}

ZqVector zq_scale(u64 c, const ZqVector &x) {
  ZqVector out(x.q, x.size());
  c %= x.q;
  for (size_t i = 0; i < x.size(); ++i) out[i] = mul_mod(c, x[i], x.q);
  return out;
}

ZqVector mat_vec(const ZqMatrix &A, const ZqVector &x) {
  if (A.q != x.q) throw DimensionError("zq: mixed moduli in mat_vec");
  if (A.cols != x.size()) throw DimensionError("zq: mat_vec dimension");
  ZqVector out(A.q, A.rows);
  for (size_t r = 0; r < A.rows; ++r) {
    u128 acc = 0;
    const u64 *row = &A.a[r * A.cols];
    for (size_t c = 0; c < A.cols; ++c) {
      acc += u128(row[c]) * x[c];
      // Opportunistic reduction keeps the accumulator below 2^126.
      if ((c & 1) == 1) acc %= A.q;
    }
    out[r] = static_cast<u64>(acc % A.q);
  }
  return out;
}

ZqVector mat_vec(const ZqSparseMatrix &A, const ZqVector &x) {
  if (A.q != x.q) throw DimensionError("zq: mixed moduli in sparse mat_vec");
  if (A.cols != x.size()) throw DimensionError("zq: sparse mat_vec dimension");
  ZqVector out(A.q, A.rows);
  for (size_t r = 0; r < A.rows; ++r) {
    u128 acc = 0;
    size_t count = 0;
    for (u32 i = A.row_start[r]; i < A.row_start[r + 1]; ++i) {
      acc += u128(A.val[i]) * x[A.col[i]];
      if ((++count & 1) == 0) acc %= A.q;
    }
    out[r] = static_cast<u64>(acc % A.q);
  }
  return out;
}

ZqVector mat_vec_int(const ZqMatrix &A, const IntVector &x) {
  if (A.cols != x.size()) throw DimensionError("zq: mat_vec_int dimension");
  ZqVector out(A.q, A.rows);
  for (size_t r = 0; r < A.rows; ++r) {
    i128 acc = 0;
    const u64 *row = &A.a[r * A.cols];
    for (size_t c = 0; c < A.cols; ++c) {
      acc += i128(row[c]) * x[c];
      if ((c & 1) == 1) acc %= i128(A.q);
    }
    out[r] = reduce_i128(acc, A.q);
  }
  return out;
}

ZqVector transpose_vec(const ZqMatrix &A, const ZqVector &x) {
  if (A.q != x.q) throw DimensionError("zq: mixed moduli in transpose_vec");
  if (A.rows != x.size()) throw DimensionError("zq: transpose_vec dimension");
  ZqVector out(A.q, A.cols);
  std::vector<u128> acc(A.cols, 0);
  for (size_t r = 0; r < A.rows; ++r) {
    const u64 *row = &A.a[r * A.cols];
    for (size_t c = 0; c < A.cols; ++c) {
      acc[c] += u128(row[c]) * x[r];
      if ((r & 1) == 1) acc[c] %= A.q;
    }
  }
  for (size_t c = 0; c < A.cols; ++c) out[c] = static_cast<u64>(acc[c] % A.q);
  return out;
}

ZqMatrix mat_mul(const ZqMatrix &A, const ZqMatrix &B) {
  if (A.q != B.q) throw DimensionError("zq: mixed moduli in mat_mul");
  if (A.cols != B.rows) throw DimensionError("zq: mat_mul dimension");
  ZqMatrix out(A.q, A.rows, B.cols);
  for (size_t r = 0; r < A.rows; ++r) {
    for (size_t k = 0; k < A.cols; ++k) {
      u64 av = A.at(r, k);
      if (av == 0) continue;
      for (size_t c = 0; c < B.cols; ++c) {
        out.at(r, c) =
            add_mod(out.at(r, c), mul_mod(av, B.at(k, c), A.q), A.q);
      }
    }
  }
  return out;
}

ZqVector to_zq(const IntVector &x, u64 q) {
  ZqVector out(q, x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = reduce_i128(x[i], q);
  return out;
}

ZqVector bits_to_zq(const BitVector &x, u64 q) {
  ZqVector out(q, x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i];
  return out;
}

IntVector to_centered(const ZqVector &x) {
  IntVector out(x.size(), static_cast<i64>(x.q / 2 + 1));
  for (size_t i = 0; i < x.size(); ++i) out[i] = centered_rep(x[i], x.q);
  return out;
}

size_t rank_mod(const ZqMatrix &A) {
  ZqMatrix m = A;
  size_t rank = 0;
  for (size_t c = 0; c < m.cols && rank < m.rows; ++c) {
    size_t pivot = rank;
    while (pivot < m.rows && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != rank)
      for (size_t j = 0; j < m.cols; ++j)
        std::swap(m.at(pivot, j), m.at(rank, j));
    u64 inv = inv_mod(m.at(rank, c), m.q);
    for (size_t j = c; j < m.cols; ++j)
      m.at(rank, j) = mul_mod(m.at(rank, j), inv, m.q);
    for (size_t r = 0; r < m.rows; ++r) {
      if (r == rank || m.at(r, c) == 0) continue;
      u64 f = m.at(r, c);
      for (size_t j = c; j < m.cols; ++j)
        m.at(r, j) = sub_mod(m.at(r, j), mul_mod(f, m.at(rank, j), m.q), m.q);
    }
    ++rank;
  }
  return rank;
}

bool solve_mod(const ZqMatrix &A, const ZqVector &b, ZqVector &x_out) {
  if (A.q != b.q || A.rows != b.size())
    throw DimensionError("zq: solve dimension");
  size_t R = A.rows, C = A.cols;
  ZqMatrix m(A.q, R, C + 1);
  for (size_t r = 0; r < R; ++r) {
    for (size_t c = 0; c < C; ++c) m.at(r, c) = A.at(r, c);
    m.at(r, C) = b[r];
  }
  std::vector<size_t> pivot_col;
  size_t rank = 0;
  for (size_t c = 0; c < C && rank < R; ++c) {
    size_t pivot = rank;
    while (pivot < R && m.at(pivot, c) == 0) ++pivot;
    if (pivot == R) continue;
    if (pivot != rank)
      for (size_t j = 0; j <= C; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    u64 inv = inv_mod(m.at(rank, c), m.q);
    for (size_t j = c; j <= C; ++j)
      m.at(rank, j) = mul_mod(m.at(rank, j), inv, m.q);
    for (size_t r = 0; r < R; ++r) {
      if (r == rank || m.at(r, c) == 0) continue;
      u64 f = m.at(r, c);
      for (size_t j = c; j <= C; ++j)
        m.at(r, j) = sub_mod(m.at(r, j), mul_mod(f, m.at(rank, j), m.q), m.q);
    }
    pivot_col.push_back(c);
    ++rank;
  }
  // Consistency: zero rows must have zero RHS.
  for (size_t r = rank; r < R; ++r)
    if (m.at(r, C) != 0) return false;
  if (rank < C) return false;  // not unique
  x_out = ZqVector(A.q, C);
  for (size_t i = 0; i < rank; ++i) x_out[pivot_col[i]] = m.at(i, C);
  return true;
}

size_t rank_bareiss(const std::vector<std::vector<i64>> &A) {
  if (A.empty()) return 0;
  size_t R = A.size(), C = A[0].size();
  std::vector<std::vector<i128>> m(R, std::vector<i128>(C));
  for (size_t r = 0; r < R; ++r)
    for (size_t c = 0; c < C; ++c) m[r][c] = A[r][c];
  i128 prev = 1;
  size_t rank = 0;
  for (size_t c = 0; c < C && rank < R; ++c) {
    size_t pivot = rank;
    while (pivot < R && m[pivot][c] == 0) ++pivot;
    if (pivot == R) continue;
    std::swap(m[pivot], m[rank]);
    for (size_t r = rank + 1; r < R; ++r) {
      for (size_t j = c + 1; j < C; ++j)
        m[r][j] = (m[rank][c] * m[r][j] - m[r][c] * m[rank][j]) / prev;
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

ZqVector uniform_vector(u64 q, size_t dim, RngHandle &rng) {
  ZqVector out(q, dim);
  for (size_t i = 0; i < dim; ++i) out[i] = rng.below(q);
  return out;
}

ZqMatrix uniform_matrix(u64 q, size_t rows, size_t cols, RngHandle &rng) {
  ZqMatrix out(q, rows, cols);
  for (auto &e : out.a) e = rng.below(q);
  return out;
}

}  // namespace lts
