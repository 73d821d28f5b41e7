// Command-line front end.  Every subcommand is a thin shell over library
// calls: artifacts move through the keystore directory (or explicit file
// paths), results go to stdout as one machine-readable line, diagnostics go
// to stderr.
//
// Exit codes: 0 success, 1 cryptographic rejection, 2 usage / IO error.

#include <cstdlib>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "lts/keystore.hpp"
#include "lts/scheme.hpp"

using namespace lts;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;

struct CliState {
  std::string keystore_dir;
  u64 seed = 0;
  bool seeded = false;

  RngHandle rng() const {
    if (seeded) return RngHandle(seed);
    std::random_device rd;
    u64 s = (u64(rd()) << 32) | rd();
    return RngHandle(s);
  }
  Keystore store() const { return Keystore(keystore_dir); }
};

ParamSet load_params(const Keystore &ks) {
  return ParamSet::decode(ks.load("params", kKindParams));
}

GroupPublicKey load_gpk(const Keystore &ks) {
  return GroupPublicKey::decode(ks.load("gpk", kKindGpk));
}

Registry load_registry(const Keystore &ks) {
  return Registry::decode(ks.load("registry", kKindRegistry));
}

GroupSignature load_signature(const std::string &path) {
  return GroupSignature::decode(load_artifact_file(path, kKindSignature));
}

// --------------------------------------------------------------------------
// Subcommand bodies.  Each returns the process exit code.

int cmd_setup(const CliState &st, u64 lambda, u64 group_size) {
  ParamSet pp = setup(lambda, group_size);
  ConstraintReport rep = validate_params(pp);
  std::cerr << rep.to_string();
  if (!rep.all_pass()) {
    std::cerr << "setup: derived parameters failed validation\n";
    return kExitReject;
  }
  st.store().save("params", kKindParams, pp.encode());
  std::cout << "params=ok q=" << pp.q << " q_prime=" << pp.q_prime << "\n";
  return kExitOk;
}

int cmd_keygen(const CliState &st) {
  Keystore ks = st.store();
  ParamSet pp = load_params(ks);
  RngHandle rng = st.rng();
  GroupKeys keys = keygen(pp, rng);
  ks.save("gpk", kKindGpk, keys.gpk.encode());
  ks.save("gsk", kKindGsk, keys.gsk.encode());
  ks.save("osk", kKindOsk, keys.osk.encode());
  ks.save("registry", kKindRegistry, keys.reg.encode());
  std::cout << "keygen=ok\n";
  return kExitOk;
}

int cmd_join_request(const CliState &st, const std::string &name) {
  Keystore ks = st.store();
  GroupPublicKey gpk = load_gpk(ks);
  RngHandle rng = st.rng();

  UserSigKey user_sk;
  bytes user_vk;
  std::string sk_name = "usersig-" + name;
  if (ks.exists(sk_name)) {
    user_sk = UserSigKey::decode(ks.load(sk_name, kKindUserSigKey));
    // vk is recomputable, but we stored it next to the key.
    user_vk = ks.load("usersig-vk-" + name, kKindUserSigKey);
  } else {
    user_vk = usersig_keygen(user_sk, rng);
    ks.save("usersig-vk-" + name, kKindUserSigKey, user_vk);
  }

  auto [req, pending] = join_user_request(gpk, user_sk, user_vk, rng);
  ks.save(sk_name, kKindUserSigKey, user_sk.encode());  // leaf counter moved
  ks.save("join-request-" + name, kKindJoinRequest, req.encode());
  ks.save("pending-" + name, kKindPending, pending.encode());
  std::cout << "request=" << name << "\n";
  return kExitOk;
}

int cmd_join_approve(const CliState &st, const std::string &name) {
  Keystore ks = st.store();
  GroupPublicKey gpk = load_gpk(ks);
  GroupManagerKey gsk = GroupManagerKey::decode(ks.load("gsk", kKindGsk));
  Registry reg = load_registry(ks);
  JoinRequest req =
      JoinRequest::decode(ks.load("join-request-" + name, kKindJoinRequest));
  RngHandle rng = st.rng();
  auto resp = join_gm_process(gpk, gsk, reg, req, rng);
  if (!resp) {
    std::cerr << "join-approve: request rejected (bad signature, duplicate "
                 "pseudonym, or group full)\n";
    return kExitReject;
  }
  ks.save("registry", kKindRegistry, reg.encode());
  ks.save("join-response-" + name, kKindJoinResponse, resp->encode());
  std::cout << "id=" << resp->id << "\n";
  return kExitOk;
}

int cmd_join_finish(const CliState &st, const std::string &name) {
  Keystore ks = st.store();
  GroupPublicKey gpk = load_gpk(ks);
  PendingUser pending =
      PendingUser::decode(ks.load("pending-" + name, kKindPending));
  JoinResponse resp = JoinResponse::decode(
      ks.load("join-response-" + name, kKindJoinResponse));
  auto fin = join_user_finalize(gpk, pending, resp);
  if (!fin) {
    std::cerr << "join-finish: certificate failed Eq. (1), aborting join\n";
    return kExitReject;
  }
  ks.save("usk-" + name, kKindUsk, fin->first.encode());
  ks.save("cert-" + name, kKindCert, fin->second.encode());
  std::cout << "joined=" << name << " id=" << fin->second.id << "\n";
  return kExitOk;
}

int cmd_sign(const CliState &st, const std::string &name,
             const std::string &msg_path, const std::string &out_path) {
  Keystore ks = st.store();
  GroupPublicKey gpk = load_gpk(ks);
  UserSecret usk = UserSecret::decode(ks.load("usk-" + name, kKindUsk));
  Certificate cert = Certificate::decode(ks.load("cert-" + name, kKindCert));
  bytes msg = read_file(msg_path);
  RngHandle rng = st.rng();
  GroupSignature sigma = sign(gpk, usk, cert, msg, rng);
  save_artifact_file(out_path, kKindSignature, sigma.encode());
  std::cout << "signed=" << out_path << "\n";
  return kExitOk;
}

int cmd_verify(const CliState &st, const std::string &msg_path,
               const std::string &sig_path) {
  Keystore ks = st.store();
  GroupPublicKey gpk = load_gpk(ks);
  GroupSignature sigma = load_signature(sig_path);
  bool ok = verify(gpk, read_file(msg_path), sigma);
  std::cout << (ok ? "verify=ok\n" : "verify=fail\n");
  return ok ? kExitOk : kExitReject;
}

int cmd_open(const CliState &st, const std::string &msg_path,
             const std::string &sig_path) {
  Keystore ks = st.store();
  GroupPublicKey gpk = load_gpk(ks);
  OpeningKey osk = OpeningKey::decode(ks.load("osk", kKindOsk));
  Registry reg = load_registry(ks);
  GroupSignature sigma = load_signature(sig_path);
  OpenAudit audit = open_audit(gpk, osk, reg, read_file(msg_path), sigma);
  if (!audit.id) {
    std::cerr << "open: signature invalid or undecryptable\n";
    std::cout << "id=none\n";
    return kExitReject;
  }
  if (!audit.registered)
    std::cerr << "open: warning: id " << *audit.id
              << " has no registry transcript\n";
  std::cout << "id=" << *audit.id << "\n";
  return kExitOk;
}

int cmd_reveal(const CliState &st, u64 id, std::string out_path) {
  Keystore ks = st.store();
  GroupPublicKey gpk = load_gpk(ks);
  OpeningKey osk = OpeningKey::decode(ks.load("osk", kKindOsk));
  Registry reg = load_registry(ks);
  RngHandle rng = st.rng();
  auto trap = reveal(gpk, osk, reg, id, rng);
  if (!trap) {
    std::cerr << "reveal: unknown id or reconstruction failed\n";
    return kExitReject;
  }
  if (out_path.empty()) {
    std::string name = "trapdoor-" + std::to_string(id);
    ks.save(name, kKindTrapdoor, trap->encode());
    out_path = ks.path(name);
  } else {
    save_artifact_file(out_path, kKindTrapdoor, trap->encode());
  }
  std::cout << "trapdoor=" << out_path << "\n";
  return kExitOk;
}

int cmd_trace(const CliState &st, const std::string &trapdoor_path,
              const std::string &sig_path) {
  Keystore ks = st.store();
  GroupPublicKey gpk = load_gpk(ks);
  TracingTrapdoor trap =
      TracingTrapdoor::decode(load_artifact_file(trapdoor_path, kKindTrapdoor));
  GroupSignature sigma = load_signature(sig_path);
  bool match = trace(gpk, trap, sigma);
  std::cout << (match ? "trace=match\n" : "trace=nomatch\n");
  return match ? kExitOk : kExitReject;
}

int cmd_claim(const CliState &st, const std::string &name,
              const std::string &msg_path, const std::string &sig_path,
              const std::string &out_path) {
  Keystore ks = st.store();
  GroupPublicKey gpk = load_gpk(ks);
  UserSecret usk = UserSecret::decode(ks.load("usk-" + name, kKindUsk));
  Certificate cert = Certificate::decode(ks.load("cert-" + name, kKindCert));
  GroupSignature sigma = load_signature(sig_path);
  RngHandle rng = st.rng();
  auto proof = claim(gpk, usk, cert, read_file(msg_path), sigma, rng);
  if (!proof) {
    std::cerr << "claim: not the signer (tag residual out of bound) or "
                 "invalid signature\n";
    return kExitReject;
  }
  save_artifact_file(out_path, kKindClaim, proof->encode());
  std::cout << "claimed=" << out_path << "\n";
  return kExitOk;
}

int cmd_claim_verify(const CliState &st, const std::string &msg_path,
                     const std::string &sig_path,
                     const std::string &claim_path) {
  Keystore ks = st.store();
  GroupPublicKey gpk = load_gpk(ks);
  GroupSignature sigma = load_signature(sig_path);
  ClaimProof proof =
      ClaimProof::decode(load_artifact_file(claim_path, kKindClaim));
  bool ok = claim_verify(gpk, read_file(msg_path), sigma, proof);
  std::cout << (ok ? "claim=ok\n" : "claim=fail\n");
  return ok ? kExitOk : kExitReject;
}

// End-to-end 3-member scenario over in-memory state; artifacts still land in
// the keystore so the run is inspectable.
int cmd_demo(const CliState &st) {
  Keystore ks = st.store();
  RngHandle rng = st.rng();
  std::cerr << "demo: setup + keygen\n";
  ParamSet pp = setup_desk();
  GroupKeys keys = keygen(pp, rng);
  ks.save("params", kKindParams, pp.encode());
  ks.save("gpk", kKindGpk, keys.gpk.encode());
  ks.save("gsk", kKindGsk, keys.gsk.encode());
  ks.save("osk", kKindOsk, keys.osk.encode());

  const char *names[3] = {"alice", "bob", "carol"};
  std::vector<UserSecret> usks;
  std::vector<Certificate> certs;
  for (const char *name : names) {
    std::cerr << "demo: join " << name << "\n";
    UserSigKey user_sk;
    bytes user_vk = usersig_keygen(user_sk, rng);
    auto [req, pending] = join_user_request(keys.gpk, user_sk, user_vk, rng);
    auto resp = join_gm_process(keys.gpk, keys.gsk, keys.reg, req, rng);
    if (!resp) {
      std::cerr << "demo: join rejected for " << name << "\n";
      return kExitReject;
    }
    auto fin = join_user_finalize(keys.gpk, pending, *resp);
    if (!fin) {
      std::cerr << "demo: join finalize failed for " << name << "\n";
      return kExitReject;
    }
    ks.save(std::string("usk-") + name, kKindUsk, fin->first.encode());
    ks.save(std::string("cert-") + name, kKindCert, fin->second.encode());
    usks.push_back(std::move(fin->first));
    certs.push_back(std::move(fin->second));
  }
  ks.save("registry", kKindRegistry, keys.reg.encode());

  bytes msg = {'d', 'e', 'm', 'o'};
  std::cerr << "demo: sign as bob\n";
  GroupSignature sigma = sign(keys.gpk, usks[1], certs[1], msg, rng);
  save_artifact_file(ks.path("demo-signature"), kKindSignature,
                     sigma.encode());

  std::cerr << "demo: verify\n";
  if (!verify(keys.gpk, msg, sigma)) return kExitReject;
  std::cerr << "demo: open\n";
  auto id = open(keys.gpk, keys.osk, msg, sigma);
  if (!id || *id != certs[1].id) return kExitReject;
  std::cerr << "demo: reveal + trace\n";
  auto trap = reveal(keys.gpk, keys.osk, keys.reg, certs[1].id, rng);
  if (!trap || !trace(keys.gpk, *trap, sigma)) return kExitReject;
  auto trap_other = reveal(keys.gpk, keys.osk, keys.reg, certs[0].id, rng);
  if (!trap_other || trace(keys.gpk, *trap_other, sigma)) return kExitReject;
  std::cerr << "demo: claim\n";
  auto proof = claim(keys.gpk, usks[1], certs[1], msg, sigma, rng);
  if (!proof || !claim_verify(keys.gpk, msg, sigma, *proof))
    return kExitReject;
  if (claim(keys.gpk, usks[0], certs[0], msg, sigma, rng))
    return kExitReject;  // non-signer must not be able to claim
  std::cout << "demo=ok signer=" << certs[1].id << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"lts: desk-scale lattice traceable signatures"};
  app.require_subcommand(1);

  CliState st;
  const char *env_dir = std::getenv("LTS_KEYSTORE");
  st.keystore_dir = env_dir ? env_dir : "keystore";
  app.add_option("--keystore", st.keystore_dir,
                 "artifact directory (or $LTS_KEYSTORE)");
  auto *seed_opt =
      app.add_option("--seed", st.seed, "deterministic RNG seed");

  u64 lambda = 16, group_size = 7, reveal_id = 0;
  std::string name, msg_path, sig_path, out_path, trapdoor_path, claim_path;

  auto *c_setup = app.add_subcommand("setup", "derive and store parameters");
  c_setup->add_option("--lambda", lambda, "desk security parameter");
  c_setup->add_option("--group-size", group_size, "max members (2^l - 1)");

  auto *c_keygen =
      app.add_subcommand("keygen", "generate gpk/gsk/osk and empty registry");

  auto *c_jreq = app.add_subcommand("join-request", "user: start a join");
  c_jreq->add_option("--as", name, "member name")->required();

  auto *c_japp = app.add_subcommand("join-approve", "GM: issue a certificate");
  c_japp->add_option("--as", name, "member name")->required();

  auto *c_jfin = app.add_subcommand("join-finish", "user: accept certificate");
  c_jfin->add_option("--as", name, "member name")->required();

  auto *c_sign = app.add_subcommand("sign", "sign a message file");
  c_sign->add_option("--as", name, "member name")->required();
  c_sign->add_option("--msg", msg_path, "message file")->required();
  c_sign->add_option("--out", out_path, "signature output file")->required();

  auto *c_verify = app.add_subcommand("verify", "verify a signature file");
  c_verify->add_option("--msg", msg_path, "message file")->required();
  c_verify->add_option("--sig", sig_path, "signature file")->required();

  auto *c_open = app.add_subcommand("open", "OA: identify the signer");
  c_open->add_option("--msg", msg_path, "message file")->required();
  c_open->add_option("--sig", sig_path, "signature file")->required();

  auto *c_reveal = app.add_subcommand("reveal", "OA: derive tracing trapdoor");
  c_reveal->add_option("--id", reveal_id, "member id")->required();
  c_reveal->add_option("--out", out_path, "trapdoor output file");

  auto *c_trace = app.add_subcommand("trace", "test a signature for a member");
  c_trace->add_option("--trapdoor", trapdoor_path, "trapdoor file")
      ->required();
  c_trace->add_option("--sig", sig_path, "signature file")->required();

  auto *c_claim = app.add_subcommand("claim", "signer: claim authorship");
  c_claim->add_option("--as", name, "member name")->required();
  c_claim->add_option("--msg", msg_path, "message file")->required();
  c_claim->add_option("--sig", sig_path, "signature file")->required();
  c_claim->add_option("--out", claim_path, "claim output file")->required();

  auto *c_cverify = app.add_subcommand("claim-verify", "check a claim proof");
  c_cverify->add_option("--msg", msg_path, "message file")->required();
  c_cverify->add_option("--sig", sig_path, "signature file")->required();
  c_cverify->add_option("--claim", claim_path, "claim file")->required();

  auto *c_demo =
      app.add_subcommand("demo", "end-to-end 3-member lifecycle scenario");

  // Let --seed / --keystore appear after the subcommand name too.
  for (CLI::App *sc : app.get_subcommands([](const CLI::App *) { return true; }))
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  st.seeded = seed_opt->count() > 0;

  try {
    if (c_setup->parsed()) return cmd_setup(st, lambda, group_size);
    if (c_keygen->parsed()) return cmd_keygen(st);
    if (c_jreq->parsed()) return cmd_join_request(st, name);
    if (c_japp->parsed()) return cmd_join_approve(st, name);
    if (c_jfin->parsed()) return cmd_join_finish(st, name);
    if (c_sign->parsed()) return cmd_sign(st, name, msg_path, out_path);
    if (c_verify->parsed()) return cmd_verify(st, msg_path, sig_path);
    if (c_open->parsed()) return cmd_open(st, msg_path, sig_path);
    if (c_reveal->parsed()) return cmd_reveal(st, reveal_id, out_path);
    if (c_trace->parsed()) return cmd_trace(st, trapdoor_path, sig_path);
    if (c_claim->parsed())
      return cmd_claim(st, name, msg_path, sig_path, claim_path);
    if (c_cverify->parsed())
      return cmd_claim_verify(st, msg_path, sig_path, claim_path);
    if (c_demo->parsed()) return cmd_demo(st);
  } catch (const CodecError &e) {
    std::cerr << "integrity/io error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SamplingError &e) {
    std::cerr << "crypto error: " << e.what() << "\n";
    return kExitReject;
  }
  return kExitUsage;
}
