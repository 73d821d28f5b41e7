#include "lts/keystore.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace lts {

const char *artifact_kind_name(u8 kind) {
  switch (kind) {
    case kKindParams: return "params";
    case kKindGpk: return "group-public-key";
    case kKindGsk: return "group-manager-key";
    case kKindOsk: return "opening-key";
    case kKindUsk: return "user-secret";
    case kKindCert: return "certificate";
    case kKindTrapdoor: return "tracing-trapdoor";
    case kKindSignature: return "group-signature";
    case kKindClaim: return "claim-proof";
    case kKindRegistry: return "registry";
    case kKindJoinRequest: return "join-request";
    case kKindJoinResponse: return "join-response";
    case kKindPending: return "join-pending";
    case kKindUserSigKey: return "user-signature-key";
    default: return "unknown";
  }
}

bytes read_file(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CodecError("cannot open file: " + path);
  bytes data((std::istreambuf_iterator<char>(f)),
             std::istreambuf_iterator<char>());
  if (!f.good() && !f.eof()) throw CodecError("read error: " + path);
  return data;
}

void write_file(const std::string &path, const bytes &data) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw CodecError("cannot create file: " + path);
  f.write(reinterpret_cast<const char *>(data.data()),
          static_cast<std::streamsize>(data.size()));
  if (!f.good()) throw CodecError("write error: " + path);
}

namespace {

std::string hex(const std::array<u8, 32> &digest) {
  static const char *d = "0123456789abcdef";
  std::string out;
  for (u8 b : digest) {
    out.push_back(d[b >> 4]);
    out.push_back(d[b & 0xF]);
  }
  return out;
}

void write_sidecar(const std::string &path, u8 kind, const bytes &sealed) {
  nlohmann::json meta;
  meta["kind"] = kind;
  meta["kind_name"] = artifact_kind_name(kind);
  meta["bytes"] = sealed.size();
  meta["digest"] = hex(fingerprint(sealed));
  meta["created_unix"] = std::chrono::duration_cast<std::chrono::seconds>(
                             std::chrono::system_clock::now().time_since_epoch())
                             .count();
  std::ofstream f(path + ".json", std::ios::trunc);
  if (f) f << meta.dump(2) << "\n";  // sidecar is best-effort metadata
}

}  // namespace

void save_artifact_file(const std::string &path, u8 kind,
                        const bytes &payload) {
  bytes sealed = seal_artifact(kind, payload);
  write_file(path, sealed);
  write_sidecar(path, kind, sealed);
}

bytes load_artifact_file(const std::string &path, u8 kind) {
  return open_artifact(kind, read_file(path));
}

Keystore::Keystore(std::string dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
}

std::string Keystore::path(const std::string &name) const {
  return (fs::path(dir_) / (name + ".bin")).string();
}

bool Keystore::exists(const std::string &name) const {
  return fs::exists(path(name));
}

void Keystore::save(const std::string &name, u8 kind,
                    const bytes &payload) const {
  save_artifact_file(path(name), kind, payload);
}

bytes Keystore::load(const std::string &name, u8 kind) const {
  return load_artifact_file(path(name), kind);
}

}  // namespace lts
