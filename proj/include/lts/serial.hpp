// Canonical byte encoding shared by every hash input and file format.
//
// Rules (fixed so independent implementations interoperate bit-exactly):
//   * every object is prefixed by a 1-byte type tag,
//   * Z_q objects carry their modulus as 8 bytes little-endian,
//   * vectors/matrices carry 4-byte little-endian dimensions,
//   * Z_q entries are little-endian fixed-width integers of
//     ceil(ceil(log2 q) / 8) bytes,
//   * IntVector entries are 8-byte little-endian two's complement,
//   * bit vectors are packed 8 bits per byte, LSB first.

#ifndef LTS_SERIAL_HPP
#define LTS_SERIAL_HPP

#include <array>
#include <string>

#include "lts/zq.hpp"

namespace lts {

enum : u8 {
  kTagZqVector = 0x01,
  kTagZqMatrix = 0x02,
  kTagZqSparse = 0x03,
  kTagIntVector = 0x04,
  kTagBitVector = 0x05,
  kTagBytes = 0x06,
  kTagU64 = 0x07,
};

inline size_t zq_entry_width(u64 q) { return (ceil_log2(q) + 7) / 8; }

class Encoder {
 public:
  void put_u8(u8 v) { out_.push_back(v); }
  void put_u32(u32 v);
  void put_u64(u64 v);
  void put_i64(i64 v) { put_u64(static_cast<u64>(v)); }
  void put_raw(const void *data, size_t len);
  void put_fixed(u64 v, size_t width);

  void put(const ZqVector &x);
  void put(const ZqMatrix &x);
  void put(const ZqSparseMatrix &x);
  void put(const IntVector &x);
  void put(const BitVector &x);
  void put(const bytes &x);       // tagged, length-prefixed
  void put_tagged_u64(u64 v);

  const bytes &data() const { return out_; }
  bytes take() { return std::move(out_); }

 private:
  bytes out_;
};

class Decoder {
 public:
  explicit Decoder(const bytes &data) : data_(data) {}

  u8 get_u8();
  u32 get_u32();
  u64 get_u64();
  i64 get_i64() { return static_cast<i64>(get_u64()); }
  void get_raw(void *dst, size_t len);
  u64 get_fixed(size_t width);

  ZqVector get_zq_vector();
  ZqMatrix get_zq_matrix();
  ZqSparseMatrix get_zq_sparse();
  IntVector get_int_vector();
  BitVector get_bit_vector();
  bytes get_bytes();
  u64 get_tagged_u64();

  bool done() const { return pos_ == data_.size(); }
  void expect_done() const {
    if (!done()) throw CodecError("decoder: trailing bytes");
  }

 private:
  void need(size_t n) const {
    if (pos_ + n > data_.size()) throw CodecError("decoder: truncated input");
  }
  const bytes &data_;
  size_t pos_ = 0;
};

// 32-byte fingerprint of a canonical encoding.
std::array<u8, 32> fingerprint(const bytes &encoded);

// Artifact container: 4-byte magic "LTSA", 1-byte version, 1-byte kind,
// payload, trailing 32-byte SHAKE256 integrity hash over everything before.
bytes seal_artifact(u8 kind, const bytes &payload);
bytes open_artifact(u8 kind, const bytes &file_contents);

}  // namespace lts

#endif  // LTS_SERIAL_HPP
