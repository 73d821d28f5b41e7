// File-based artifact store used by the CLI: one sealed binary file per
// artifact plus a human-readable JSON sidecar.  The binary file is canonical;
// every load re-checks magic, version, kind and the trailing integrity hash.

#ifndef LTS_KEYSTORE_HPP
#define LTS_KEYSTORE_HPP

#include <string>

#include "lts/serial.hpp"

namespace lts {

enum ArtifactKind : u8 {
  kKindParams = 0x01,
  kKindGpk = 0x02,
  kKindGsk = 0x03,
  kKindOsk = 0x04,
  kKindUsk = 0x05,
  kKindCert = 0x06,
  kKindTrapdoor = 0x07,
  kKindSignature = 0x08,
  kKindClaim = 0x09,
  kKindRegistry = 0x0A,
  kKindJoinRequest = 0x0B,
  kKindJoinResponse = 0x0C,
  kKindPending = 0x0D,
  kKindUserSigKey = 0x0E,
};

const char *artifact_kind_name(u8 kind);

bytes read_file(const std::string &path);
void write_file(const std::string &path, const bytes &data);

// Seals and writes `path` (and `path` + ".json" metadata sidecar).
void save_artifact_file(const std::string &path, u8 kind,
                        const bytes &payload);
// Reads and unseals; throws CodecError on any integrity failure.
bytes load_artifact_file(const std::string &path, u8 kind);

// Directory keystore: artifacts named by role and id, e.g. "gpk",
// "cert-alice", "trapdoor-3".
class Keystore {
 public:
  explicit Keystore(std::string dir);

  std::string path(const std::string &name) const;
  bool exists(const std::string &name) const;
  void save(const std::string &name, u8 kind, const bytes &payload) const;
  bytes load(const std::string &name, u8 kind) const;

  const std::string &dir() const { return dir_; }

 private:
  std::string dir_;
};

}  // namespace lts

#endif  // LTS_KEYSTORE_HPP
