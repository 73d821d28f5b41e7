#include "lts/params.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "lts/relations.hpp"
#include "lts/sampler.hpp"
#include "lts/serial.hpp"

namespace lts {

namespace {

// Gaussian widths for the two trapdoor samplers, with a fixed 1.15x margin
// above the validity floor so sample_d always has perturbation headroom.
constexpr double kWidthMargin = 1.15;

double gpv_width(u64 n, u64 kq, u64 m_B) {
  u64 w = n * kq;
  double cfloor = gauss_width_floor(m_B + w);
  double quality = std::sqrt(1.0 + double(m_B - w));  // binary S columns
  return kWidthMargin * std::sqrt(5.0) * cfloor * quality;
}

double sign_width(u64 m_1, u64 m_2) {
  double cfloor = gauss_width_floor(m_1 + m_2);
  double quality = std::sqrt(1.0 + double(m_1));  // ternary R columns
  return kWidthMargin * std::sqrt(5.0) * cfloor * quality;
}

// Largest decryption noise we budget for: sum of m_B+1 products of two
// Gaussians (widths sigma_gpv and alpha*q' = 1), ten standard deviations.
double gpv_noise_budget(double sigma_gpv, u64 m_B) {
  return 10.0 * sigma_gpv * std::sqrt(double(m_B + 1)) / (2.0 * M_PI);
}

}  // namespace

ParamSet setup(u64 lambda_desk, u64 N) {
  if (lambda_desk < 4) throw SamplingError("setup: lambda too small");
  ParamSet pp;
  pp.lambda_desk = lambda_desk;
  pp.n = lambda_desk;
  pp.N = N;
  pp.ell = ceil_log2(N + 1);
  if (N < 1 || N != (u64(1) << pp.ell) - 1)
    throw SamplingError("setup: N must be 2^ell - 1");
  pp.m_M = 3 * pp.n;
  pp.B_lwe = 3;
  pp.B_gpv = 12;
  pp.l1 = lambda_desk;
  pp.l2 = lambda_desk;
  pp.p = 2;
  pp.kappa = 8;

  // --- q' fixpoint over kq = ceil(log2 q') ------------------------------
  bool found = false;
  for (u64 kq = 4; kq <= 40 && !found; ++kq) {
    u64 m_F = pp.n * kq + lambda_desk;
    u64 m_B = 2 * pp.n * kq + lambda_desk;
    double sigma_gpv = gpv_width(pp.n, kq, m_B);
    double need = 173.0;  // floor keeping binary/ternary sampling sane
    need = std::max(need, double((4 * pp.B_lwe + 1) * (4 * pp.B_lwe + 1)));
    // Reveal: |s^T e| <= sigma_gpv sqrt(m_B) ||e|| <= sigma_gpv m_B B_lwe
    // per kernel column must stay below q'/2.
    need = std::max(need, 2.0 * sigma_gpv * double(m_B) * double(pp.B_lwe));
    // GPV decryption: noise budget below q'/(4(N+1)).
    need = std::max(need, 4.0 * double(N + 1) *
                              gpv_noise_budget(sigma_gpv, m_B));
    need = std::max(need, 2.0 * double(N + 1) + 1.0);  // Delta >= 1
    u64 lo = std::max<u64>(static_cast<u64>(std::ceil(need)),
                           (u64(1) << (kq - 1)));
    u64 qp = next_prime(lo);
    if (ceil_log2(qp) != kq) continue;
    pp.q_prime = qp;
    pp.m_F = m_F;
    pp.m_B = m_B;
    pp.sigma_gpv = sigma_gpv;
    pp.alpha_gpv = 1.0 / double(qp);
    found = true;
  }
  if (!found) throw SamplingError("setup: no q' fixpoint");

  // --- q fixpoint over kQ = ceil(log2 q) --------------------------------
  found = false;
  for (u64 kQ = pp.log2_q_prime() + 1; kQ <= 61 && !found; ++kQ) {
    pp.m_2 = pp.n * kQ;
    pp.m_1 = static_cast<u64>(
        std::ceil(double(pp.n * kQ + lambda_desk) / std::log2(3.0)));
    pp.sigma_sign = sign_width(pp.m_1, pp.m_2);
    pp.sigma_com = pp.sigma_sign;
    pp.sigma_verif =
        std::sqrt(pp.sigma_sign * pp.sigma_sign + pp.sigma_com * pp.sigma_com);
    pp.beta_1 = static_cast<u64>(
        std::ceil(pp.sigma_verif * std::log(double(pp.m_1))));
    pp.beta_2 = static_cast<u64>(
        std::ceil(pp.sigma_sign * std::log(double(pp.m_2))));
    pp.q = (u64(1) << kQ) - 1;  // provisional: only its bit length is used
    LayoutDims dims = sign_layout_dims(pp);
    double l = double(2 * pp.l1 + 2 * pp.l2 + dims.n_prime + dims.n_triples);
    pp.sigma_1 = std::sqrt(2.0 * double(pp.l2) / M_PI);
    pp.sigma_2 = 2.0 * double(pp.p) * l * std::log(l) * pp.sigma_1;
    pp.M_rej = std::exp(1.0 / (std::log(l) * std::log(l)));
    double need = 2.0 * double(pp.p) + 1.0;
    for (const auto &[name, bound] : q_lower_bounds(pp))
      need = std::max(need, bound);
    if (need >= double(u64(1) << kQ)) continue;
    u64 lo = std::max<u64>(static_cast<u64>(std::ceil(need)),
                           (u64(1) << (kQ - 1)));
    u64 q = next_prime(lo);
    if (ceil_log2(q) != kQ || q > kMaxModulus) continue;
    pp.q = q;
    found = true;
  }
  if (!found) throw SamplingError("setup: no q fixpoint below the 2^62 cap");
  return pp;
}

ParamSet setup_desk() { return setup(16, 7); }

ConstraintReport validate_params(const ParamSet &pp) {
  ConstraintReport rep;
  auto row = [&rep](const std::string &name, double lhs, double rhs,
                    bool pass, bool info = false) {
    rep.rows.push_back({name, lhs, rhs, pass, info});
  };
  auto ge = [&row](const std::string &name, double lhs, double rhs) {
    row(name, lhs, rhs, lhs >= rhs);
  };
  auto eq = [&row](const std::string &name, double lhs, double rhs) {
    row(name, lhs, rhs, lhs == rhs);
  };

  row("q_prime is prime", pp.q_prime, 0, is_prime_u64(pp.q_prime));
  row("q is prime", pp.q, 0, is_prime_u64(pp.q));
  ge("q > q_prime", double(pp.q), double(pp.q_prime) + 1);
  ge("q <= 2^62", double(kMaxModulus), double(pp.q));
  eq("N = 2^ell - 1", double(pp.N), double((u64(1) << pp.ell) - 1));
  u64 kq = pp.log2_q_prime();
  eq("m_F = n kq + lambda", double(pp.m_F),
     double(pp.n * kq + pp.lambda_desk));
  eq("m_B = 2 n kq + lambda", double(pp.m_B),
     double(2 * pp.n * kq + pp.lambda_desk));
  eq("m_M = 3n", double(pp.m_M), double(3 * pp.n));
  eq("m_2 = n kQ", double(pp.m_2), double(pp.n * pp.log2_q()));
  ge("m_1 entropy (ternary)", double(pp.m_1) * std::log2(3.0),
     double(pp.n * pp.log2_q() + pp.lambda_desk));

  // Gaussian width floors.
  ge("sigma_gpv floor", pp.sigma_gpv,
     std::sqrt(5.0) * gauss_width_floor(pp.m_B + pp.n * kq) *
         std::sqrt(1.0 + double(pp.m_B - pp.n * kq)));
  ge("sigma_sign floor", pp.sigma_sign,
     std::sqrt(5.0) * gauss_width_floor(pp.m_1 + pp.m_2) *
         std::sqrt(1.0 + double(pp.m_1)));
  ge("sigma_verif = sqrt(com^2+sign^2)", pp.sigma_verif + 1e-9,
     std::sqrt(pp.sigma_com * pp.sigma_com + pp.sigma_sign * pp.sigma_sign));
  ge("beta_1 >= sigma_verif ln m_1", double(pp.beta_1),
     pp.sigma_verif * std::log(double(pp.m_1)));
  ge("beta_2 >= sigma_sign ln m_2", double(pp.beta_2),
     pp.sigma_sign * std::log(double(pp.m_2)));

  // GPV / Reveal bounds on q'.
  ge("q' > 2 sigma_gpv m_B B_lwe (Reveal)", double(pp.q_prime),
     2.0 * pp.sigma_gpv * double(pp.m_B) * double(pp.B_lwe));
  ge("q'/(4(N+1)) > decryption noise budget",
     double(pp.q_prime) / (4.0 * double(pp.N + 1)),
     gpv_noise_budget(pp.sigma_gpv, pp.m_B));
  ge("Delta >= 1", double((pp.q_prime + pp.N + 1) / (2 * (pp.N + 1))), 1.0);
  ge("alpha q' = 1", 1e-12,
     std::abs(pp.alpha_gpv * double(pp.q_prime) - 1.0));

  // ZK layer.
  LayoutDims dims = sign_layout_dims(pp);
  double l = double(2 * pp.l1 + 2 * pp.l2 + dims.n_prime + dims.n_triples);
  ge("sigma_1 >= sqrt(2 l2 / pi)", pp.sigma_1 + 1e-9,
     std::sqrt(2.0 * double(pp.l2) / M_PI));
  ge("sigma_2 >= 2 p l ln(l) sigma_1", pp.sigma_2 * (1 + 1e-9),
     2.0 * double(pp.p) * l * std::log(l) * pp.sigma_1);
  row("M_rej = exp(1/ln^2 l)", pp.M_rej,
      std::exp(1.0 / (std::log(l) * std::log(l))),
      std::abs(pp.M_rej - std::exp(1.0 / (std::log(l) * std::log(l)))) <
          1e-6,
      true);
  for (const auto &[name, bound] : q_lower_bounds(pp))
    ge("q > " + name, double(pp.q), bound);
  ge("p < q0/2", double(pp.q) / 2.0, double(pp.p) + 1);

  // Desk conventions, recorded but not enforced.
  row("l1 = l2 = lambda (desk preset)", double(pp.l1),
      double(pp.lambda_desk),
      pp.l1 == pp.lambda_desk && pp.l2 == pp.lambda_desk, true);
  row("per-proof soundness (2/(2p+1))^kappa",
      std::pow(2.0 / (2.0 * double(pp.p) + 1.0), double(pp.kappa)), 0.0,
      true, true);
  row("witness length n'", double(dims.n_prime), 0.0, true, true);
  row("|S| triples", double(dims.n_triples), 0.0, true, true);
  return rep;
}

std::string ConstraintReport::to_string() const {
  std::ostringstream os;
  for (const auto &r : rows) {
    os << (r.pass ? "[ok]  " : "[FAIL]") << (r.informational ? " (info) " : " ")
       << r.name << ": lhs=" << r.lhs << " rhs=" << r.rhs << "\n";
  }
  os << (all_pass() ? "ALL CONSTRAINTS PASS" : "CONSTRAINT FAILURES PRESENT")
     << "\n";
  return os.str();
}

bytes ParamSet::encode() const {
  Encoder enc;
  for (u64 v : {lambda_desk, n, N, ell, q, q_prime, m_F, m_B, m_1, m_2, m_M,
                beta_1, beta_2, B_gpv, B_lwe, l1, l2, p, kappa, ots_vklen})
    enc.put_tagged_u64(v);
  for (double d : {sigma_sign, sigma_com, sigma_verif, alpha_gpv, sigma_gpv,
                   sigma_1, sigma_2, M_rej})
    enc.put_tagged_u64(std::bit_cast<u64>(d));
  return enc.take();
}

ParamSet ParamSet::decode(const bytes &data) {
  Decoder dec(data);
  ParamSet pp;
  for (u64 *v : {&pp.lambda_desk, &pp.n, &pp.N, &pp.ell, &pp.q, &pp.q_prime,
                 &pp.m_F, &pp.m_B, &pp.m_1, &pp.m_2, &pp.m_M, &pp.beta_1,
                 &pp.beta_2, &pp.B_gpv, &pp.B_lwe, &pp.l1, &pp.l2, &pp.p,
                 &pp.kappa, &pp.ots_vklen})
    *v = dec.get_tagged_u64();
  for (double *d : {&pp.sigma_sign, &pp.sigma_com, &pp.sigma_verif,
                    &pp.alpha_gpv, &pp.sigma_gpv, &pp.sigma_1, &pp.sigma_2,
                    &pp.M_rej})
    *d = std::bit_cast<double>(dec.get_tagged_u64());
  dec.expect_done();
  return pp;
}

}  // namespace lts
