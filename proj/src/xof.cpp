#include "lts/xof.hpp"

#include <openssl/evp.h>

#include <cstring>

namespace lts {

Xof::Xof() {
  EVP_MD_CTX *ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_shake256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("xof: SHAKE256 init failed");
  }
  ctx_ = ctx;
}

Xof::~Xof() { EVP_MD_CTX_free(static_cast<EVP_MD_CTX *>(ctx_)); }

void Xof::update(const void *data, size_t len) {
  if (len == 0) return;
  if (EVP_DigestUpdate(static_cast<EVP_MD_CTX *>(ctx_), data, len) != 1)
    throw std::runtime_error("xof: update failed");
}

void Xof::update_len(u64 len) {
  u8 buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<u8>(len >> (8 * i));
  update(buf, 8);
}

bytes Xof::squeeze(size_t outlen) {
  bytes out(outlen);
  // OpenSSL rejects zero-length finalization buffers for XOFs.
  u8 dummy;
  u8 *dst = outlen > 0 ? out.data() : &dummy;
  size_t n = outlen > 0 ? outlen : 1;
  if (EVP_DigestFinalXOF(static_cast<EVP_MD_CTX *>(ctx_), dst, n) != 1)
    throw std::runtime_error("xof: squeeze failed");
  return out;
}

bytes shake256(const bytes &input, size_t outlen) {
  Xof x;
  x.update(input);
  return x.squeeze(outlen);
}

std::array<u8, 32> shake256_32(const bytes &input) {
  bytes d = shake256(input, 32);
  std::array<u8, 32> out{};
  std::memcpy(out.data(), d.data(), 32);
  return out;
}

}  // namespace lts
