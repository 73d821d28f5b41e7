#include "lts/oracles.hpp"

#include "lts/xof.hpp"

namespace lts {

namespace {

// One squeeze of `outlen` bytes from SHAKE256(tag || len64 || input).
bytes oracle_stream(std::string_view tag, const bytes &input, size_t outlen) {
  Xof x;
  x.update(tag.data(), tag.size());
  x.update_len(input.size());
  x.update(input.data(), input.size());
  return x.squeeze(outlen);
}

size_t chunk_bytes_for(u64 q) { return (2 * ceil_log2(q) + 7) / 8; }

u64 entry_at(const bytes &stream, size_t idx, size_t chunk_bytes, u64 q) {
  u128 v = 0;
  for (size_t i = 0; i < chunk_bytes; ++i)
    v |= u128(stream[idx * chunk_bytes + i]) << (8 * i);
  return static_cast<u64>(v % q);
}

}  // namespace

ZqVector ro_zq_vector(std::string_view tag, const bytes &input, size_t dim,
                      u64 q) {
  check_modulus(q);
  size_t cb = chunk_bytes_for(q);
  bytes stream = oracle_stream(tag, input, dim * cb);
  ZqVector out(q, dim);
  for (size_t i = 0; i < dim; ++i) out[i] = entry_at(stream, i, cb, q);
  return out;
}

ZqMatrix ro_zq_matrix(std::string_view tag, const bytes &input, size_t rows,
                      size_t cols, u64 q) {
  check_modulus(q);
  size_t cb = chunk_bytes_for(q);
  bytes stream = oracle_stream(tag, input, rows * cols * cb);
  ZqMatrix out(q, rows, cols);
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = entry_at(stream, i, cb, q);
  return out;
}

std::vector<u8> ro_challenge_indices(std::string_view tag, const bytes &input,
                                     size_t kappa) {
  bytes stream = oracle_stream(tag, input, (kappa + 3) / 4);
  std::vector<u8> out(kappa);
  for (size_t i = 0; i < kappa; ++i)
    out[i] = static_cast<u8>(((stream[i / 4] >> (2 * (i % 4))) & 3) + 1);
  return out;
}

bytes ro_response_hash(std::string_view tag, const bytes &response) {
  return oracle_stream(tag, response, response.size());
}

}  // namespace lts
