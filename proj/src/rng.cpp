#include "lts/rng.hpp"

#include <cstring>

#include "lts/xof.hpp"

namespace lts {

namespace {
constexpr size_t kBlock = 4096;
}

RngHandle::RngHandle(const bytes &seed) {
  bytes in;
  in.reserve(seed.size() + 4);
  in.insert(in.end(), {'r', 'n', 'g', 0x01});
  in.insert(in.end(), seed.begin(), seed.end());
  key_ = shake256_32(in);
}

RngHandle::RngHandle(u64 seed) {
  bytes in(12);
  std::memcpy(in.data(), "rng\x02", 4);
  for (int i = 0; i < 8; ++i) in[4 + i] = static_cast<u8>(seed >> (8 * i));
  key_ = shake256_32(in);
}

void RngHandle::refill() {
  Xof x;
  x.update(key_.data(), key_.size());
  u8 ctr[8];
  for (int i = 0; i < 8; ++i) ctr[i] = static_cast<u8>(counter_ >> (8 * i));
  x.update(ctr, 8);
  buf_ = x.squeeze(kBlock);
  pos_ = 0;
  ++counter_;
}

void RngHandle::fill(void *out, size_t len) {
  u8 *dst = static_cast<u8 *>(out);
  while (len > 0) {
    if (pos_ >= buf_.size()) refill();
    size_t take = std::min(len, buf_.size() - pos_);
    std::memcpy(dst, buf_.data() + pos_, take);
    pos_ += take;
    dst += take;
    len -= take;
  }
}

bytes RngHandle::get_bytes(size_t len) {
  bytes out(len);
  fill(out.data(), len);
  return out;
}

u64 RngHandle::next_u64() {
  u64 v;
  fill(&v, sizeof v);
  return v;
}

u64 RngHandle::below(u64 bound) {
  if (bound == 0) throw DimensionError("rng: below(0)");
  if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
  // Rejection from the largest multiple of bound below 2^64.
  u64 limit = u64(0) - (u64(0) - bound) % bound;  // = 2^64 - (2^64 mod bound)
  for (;;) {
    u64 v = next_u64();
    if (v < limit || limit == 0) return v % bound;
  }
}

i64 RngHandle::centered(u64 radius) {
  return static_cast<i64>(below(2 * radius + 1)) - static_cast<i64>(radius);
}

RngHandle RngHandle::fork(const std::string &label) const {
  Xof x;
  x.update(key_.data(), key_.size());
  u8 sep = 0xF0;
  x.update(&sep, 1);
  x.update(label.data(), label.size());
  bytes nk = x.squeeze(32);
  RngHandle out;
  std::memcpy(out.key_.data(), nk.data(), 32);
  return out;
}

RngHandle RngHandle::fork(u64 index) const {
  return fork("i" + std::to_string(index));
}

}  // namespace lts
