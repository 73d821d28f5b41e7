#include "lts/serial.hpp"

#include <cstring>

#include "lts/xof.hpp"

namespace lts {

void Encoder::put_u32(u32 v) {
  for (int i = 0; i < 4; ++i) out_.push_back(static_cast<u8>(v >> (8 * i)));
}

void Encoder::put_u64(u64 v) {
  for (int i = 0; i < 8; ++i) out_.push_back(static_cast<u8>(v >> (8 * i)));
}

void Encoder::put_raw(const void *data, size_t len) {
  const u8 *p = static_cast<const u8 *>(data);
  out_.insert(out_.end(), p, p + len);
}

void Encoder::put_fixed(u64 v, size_t width) {
  for (size_t i = 0; i < width; ++i)
    out_.push_back(static_cast<u8>(v >> (8 * i)));
}

void Encoder::put(const ZqVector &x) {
  put_u8(kTagZqVector);
  put_u64(x.q);
  put_u32(static_cast<u32>(x.size()));
  size_t w = zq_entry_width(x.q);
  for (u64 e : x.v) put_fixed(e, w);
}

void Encoder::put(const ZqMatrix &x) {
  put_u8(kTagZqMatrix);
  put_u64(x.q);
  put_u32(static_cast<u32>(x.rows));
  put_u32(static_cast<u32>(x.cols));
  size_t w = zq_entry_width(x.q);
  for (u64 e : x.a) put_fixed(e, w);
}

void Encoder::put(const ZqSparseMatrix &x) {
  put_u8(kTagZqSparse);
  put_u64(x.q);
  put_u32(static_cast<u32>(x.rows));
  put_u32(static_cast<u32>(x.cols));
  put_u32(static_cast<u32>(x.nnz()));
  size_t w = zq_entry_width(x.q);
  for (size_t r = 0; r < x.rows; ++r) {
    for (u32 i = x.row_start[r]; i < x.row_start[r + 1]; ++i) {
      put_u32(static_cast<u32>(r));
      put_u32(x.col[i]);
      put_fixed(x.val[i], w);
    }
  }
}

void Encoder::put(const IntVector &x) {
  put_u8(kTagIntVector);
  put_u64(static_cast<u64>(x.bound));
  put_u32(static_cast<u32>(x.size()));
  for (i64 e : x.v) put_u64(static_cast<u64>(e));
}

void Encoder::put(const BitVector &x) {
  put_u8(kTagBitVector);
  put_u32(static_cast<u32>(x.size()));
  u8 acc = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i]) acc |= static_cast<u8>(1 << (i & 7));
    if ((i & 7) == 7) {
      out_.push_back(acc);
      acc = 0;
    }
  }
  if (x.size() % 8 != 0) out_.push_back(acc);
}

void Encoder::put(const bytes &x) {
  put_u8(kTagBytes);
  put_u32(static_cast<u32>(x.size()));
  put_raw(x.data(), x.size());
}

void Encoder::put_tagged_u64(u64 v) {
  put_u8(kTagU64);
  put_u64(v);
}

u8 Decoder::get_u8() {
  need(1);
  return data_[pos_++];
}

u32 Decoder::get_u32() {
  need(4);
  u32 v = 0;
  for (int i = 0; i < 4; ++i) v |= u32(data_[pos_ + i]) << (8 * i);
  pos_ += 4;
  return v;
}

u64 Decoder::get_u64() {
  need(8);
  u64 v = 0;
  for (int i = 0; i < 8; ++i) v |= u64(data_[pos_ + i]) << (8 * i);
  pos_ += 8;
  return v;
}

void Decoder::get_raw(void *dst, size_t len) {
  need(len);
  std::memcpy(dst, data_.data() + pos_, len);
  pos_ += len;
}

u64 Decoder::get_fixed(size_t width) {
  need(width);
  u64 v = 0;
  for (size_t i = 0; i < width; ++i) v |= u64(data_[pos_ + i]) << (8 * i);
  pos_ += width;
  return v;
}

namespace {
void expect_tag(u8 got, u8 want) {
  if (got != want) throw CodecError("decoder: unexpected type tag");
}
}  // namespace

ZqVector Decoder::get_zq_vector() {
  expect_tag(get_u8(), kTagZqVector);
  u64 q = get_u64();
  check_modulus(q);
  u32 n = get_u32();
  ZqVector out(q, n);
  size_t w = zq_entry_width(q);
  for (u32 i = 0; i < n; ++i) {
    u64 e = get_fixed(w);
    if (e >= q) throw CodecError("decoder: entry not canonical");
    out[i] = e;
  }
  return out;
}

ZqMatrix Decoder::get_zq_matrix() {
  expect_tag(get_u8(), kTagZqMatrix);
  u64 q = get_u64();
  check_modulus(q);
  u32 r = get_u32(), c = get_u32();
  ZqMatrix out(q, r, c);
  size_t w = zq_entry_width(q);
  for (auto &e : out.a) {
    e = get_fixed(w);
    if (e >= q) throw CodecError("decoder: entry not canonical");
  }
  return out;
}

ZqSparseMatrix Decoder::get_zq_sparse() {
  expect_tag(get_u8(), kTagZqSparse);
  u64 q = get_u64();
  check_modulus(q);
  u32 rows = get_u32(), cols = get_u32(), nnz = get_u32();
  SparseBuilder b(q, rows, cols);
  size_t w = zq_entry_width(q);
  for (u32 i = 0; i < nnz; ++i) {
    u32 r = get_u32(), c = get_u32();
    u64 v = get_fixed(w);
    if (r >= rows || c >= cols || v == 0 || v >= q)
      throw CodecError("decoder: malformed sparse entry");
    b.add(r, c, v);
  }
  return b.freeze();
}

IntVector Decoder::get_int_vector() {
  expect_tag(get_u8(), kTagIntVector);
  i64 bound = get_i64();
  u32 n = get_u32();
  IntVector out(n, bound);
  for (u32 i = 0; i < n; ++i) {
    out[i] = get_i64();
    if (std::abs(out[i]) > bound)
      throw CodecError("decoder: intvector entry exceeds bound");
  }
  return out;
}

BitVector Decoder::get_bit_vector() {
  expect_tag(get_u8(), kTagBitVector);
  u32 n = get_u32();
  BitVector out(n);
  size_t nbytes = (n + 7) / 8;
  need(nbytes);
  for (u32 i = 0; i < n; ++i)
    out[i] = (data_[pos_ + i / 8] >> (i & 7)) & 1;
  pos_ += nbytes;
  return out;
}

bytes Decoder::get_bytes() {
  expect_tag(get_u8(), kTagBytes);
  u32 n = get_u32();
  bytes out(n);
  get_raw(out.data(), n);
  return out;
}

u64 Decoder::get_tagged_u64() {
  expect_tag(get_u8(), kTagU64);
  return get_u64();
}

std::array<u8, 32> fingerprint(const bytes &encoded) {
  return shake256_32(encoded);
}

namespace {
constexpr char kMagic[4] = {'L', 'T', 'S', 'A'};
constexpr u8 kVersion = 1;
}  // namespace

bytes seal_artifact(u8 kind, const bytes &payload) {
  bytes out;
  out.reserve(payload.size() + 38);
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(kind);
  out.insert(out.end(), payload.begin(), payload.end());
  auto h = shake256_32(out);
  out.insert(out.end(), h.begin(), h.end());
  return out;
}

bytes open_artifact(u8 kind, const bytes &file_contents) {
  if (file_contents.size() < 38) throw CodecError("artifact: truncated");
  if (std::memcmp(file_contents.data(), kMagic, 4) != 0)
    throw CodecError("artifact: bad magic");
  if (file_contents[4] != kVersion) throw CodecError("artifact: bad version");
  if (file_contents[5] != kind) throw CodecError("artifact: wrong kind");
  bytes body(file_contents.begin(), file_contents.end() - 32);
  auto h = shake256_32(body);
  if (std::memcmp(h.data(), file_contents.data() + file_contents.size() - 32,
                  32) != 0)
    throw CodecError("artifact: integrity hash mismatch");
  return bytes(body.begin() + 6, body.end());
}

}  // namespace lts
