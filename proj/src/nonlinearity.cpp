#include "nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

#include "frozen_constants.hpp"
#include "logsplit.hpp"

namespace nlslab {

namespace {
constexpr double kTiny = 1e-300;

cplx gauge(cplx z, double profile_value) {
  double rho = std::abs(z);
  if (rho < kTiny) return 0.0;
  return z * (profile_value / rho);
}
}  // namespace

NonlinearityFamily NonlinearityFamily::power(double lambda, double sigma) {
  NonlinearityFamily f;
  f.kind = FamilyKind::PowerLocal;
  f.lambda = lambda;
  f.sigma = sigma;
  return f;
}

NonlinearityFamily NonlinearityFamily::logarithmic() {
  NonlinearityFamily f;
  f.kind = FamilyKind::Logarithmic;
  return f;
}

NonlinearityFamily NonlinearityFamily::damping(double alpha) {
  NonlinearityFamily f;
  f.kind = FamilyKind::Damping;
  f.alpha = alpha;
  return f;
}

NonlinearityFamily NonlinearityFamily::power_plus_damping(double lambda, double sigma,
                                                          double alpha) {
  NonlinearityFamily f;
  f.kind = FamilyKind::PowerPlusDamping;
  f.lambda = lambda;
  f.sigma = sigma;
  f.alpha = alpha;
  return f;
}

void NonlinearityFamily::validate() const {
  if (has_power_part()) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("nonlinearity: sigma must be >= 0");
    if (sigma > 2.0 && !sigma_override)
      throw std::invalid_argument(
          "nonlinearity: sigma > 2 exceeds the validated growth range; "
          "set sigma_override to explore it anyway");
  }
  if (has_damping_part()) {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("nonlinearity: alpha must lie in (0,1)");
  }
}

std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::PowerLocal: return "power";
    case FamilyKind::Logarithmic: return "logarithmic";
    case FamilyKind::Damping: return "damping";
    case FamilyKind::PowerPlusDamping: return "power_damping";
  }
  return "?";
}

FamilyKind family_from_name(const std::string& name) {
  if (name == "power") return FamilyKind::PowerLocal;
  if (name == "logarithmic" || name == "log") return FamilyKind::Logarithmic;
  if (name == "damping") return FamilyKind::Damping;
  if (name == "power_damping") return FamilyKind::PowerPlusDamping;
  throw std::invalid_argument("nonlinearity: unknown family " + name);
}

double power_profile(double lambda, double sigma, double m, double rho) {
  if (rho < kTiny) return 0.0;
  if (rho >= m) return lambda * std::pow(m, sigma) * rho;  // (z/m) g(m)
  return lambda * std::pow(rho, sigma + 1.0);
}

double damping_profile(double alpha, double m, double rho) {
  if (rho < kTiny) return 0.0;
  if (!std::isinf(m) && rho <= 1.0 / m) return std::pow(m, alpha) * rho;  // m z g(1/m)
  return std::pow(rho, 1.0 - alpha);
}

double log_profile(double m, double rho) {
  if (rho < kTiny) return 0.0;
  if (std::isinf(m)) return 2.0 * rho * std::log(rho);
  return -logsplit_a_m(m, rho) + logsplit_b_m(m, rho);
}

cplx eval_g(const NonlinearityFamily& family, cplx z) {
  return eval_g_trunc(family, kUntruncated, z);
}

cplx eval_g_trunc(const NonlinearityFamily& family, double m, cplx z) {
  double rho = std::abs(z);
  switch (family.kind) {
    case FamilyKind::PowerLocal:
    case FamilyKind::PowerPlusDamping:
      return gauge(z, power_profile(family.lambda, family.sigma, m, rho));
    case FamilyKind::Logarithmic:
      return gauge(z, log_profile(m, rho));
    case FamilyKind::Damping:
      return gauge(z, damping_profile(family.alpha, m, rho));
  }
  return 0.0;
}

LogPair eval_log_pair(double m, cplx z) {
  double rho = std::abs(z);
  return {gauge(z, logsplit_a_m(m, rho)), gauge(z, logsplit_b_m(m, rho))};
}

namespace {
double power_primitive(double lambda, double sigma, double m, double rho) {
  auto untrunc = [&](double r) { return lambda * std::pow(r, sigma + 2.0) / (sigma + 2.0); };
  if (std::isinf(m) || rho <= m) return untrunc(rho);
  // beyond m the profile is linear with slope lambda m^sigma
  return untrunc(m) + 0.5 * lambda * std::pow(m, sigma) * (rho * rho - m * m);
}
}  // namespace

double damping_primitive(double alpha, double m, double rho) {
  auto untrunc = [&](double r) { return std::pow(r, 2.0 - alpha) / (2.0 - alpha); };
  if (std::isinf(m)) return untrunc(rho);
  double t = 1.0 / m;
  double slope = std::pow(m, alpha);
  if (rho <= t) return 0.5 * slope * rho * rho;
  return 0.5 * slope * t * t + untrunc(rho) - untrunc(t);
}

double antiderivative(const NonlinearityFamily& family, double m, double rho) {
  if (!(rho >= 0.0)) throw std::invalid_argument("antiderivative: rho must be >= 0");
  switch (family.kind) {
    case FamilyKind::PowerLocal:
    case FamilyKind::PowerPlusDamping:
      return power_primitive(family.lambda, family.sigma, m, rho);
    case FamilyKind::Logarithmic:
      return logsplit_psi(m, rho) - logsplit_phi(m, rho);
    case FamilyKind::Damping:
      return damping_primitive(family.alpha, m, rho);
  }
  return 0.0;
}

namespace {
double im_pair(cplx gu, cplx gv, cplx u, cplx v) {
  return std::imag((gu - gv) * std::conj(u - v));
}
}  // namespace

InequalityCheck inequality_oracle(InequalityKind kind, cplx u, cplx v,
                                  const OracleParams& params) {
  InequalityCheck out;
  const double duv = std::abs(u - v);
  switch (kind) {
    case InequalityKind::Lip24: {
      if (duv == 0.0) return {0.0, 0.0, true};
      auto fam = NonlinearityFamily::power(params.lambda, params.sigma);
      cplx gu = eval_g_trunc(fam, params.m, u);
      cplx gv = eval_g_trunc(fam, params.m, v);
      out.lhs = std::abs(gu - gv);
      out.rhs = frozen_constants().lip24_c * (1.0 + std::norm(u) + std::norm(v)) * duv;
      break;
    }
    case InequalityKind::Log34: {
      if (duv == 0.0) return {0.0, 0.0, true};
      auto fam = NonlinearityFamily::logarithmic();
      out.lhs = std::abs(im_pair(eval_g(fam, u), eval_g(fam, v), u, v));
      out.rhs = 2.0 * duv * duv;
      break;
    }
    case InequalityKind::LogReg35a: {
      if (duv == 0.0) return {0.0, 0.0, true};
      LogPair pu = eval_log_pair(params.m, u);
      LogPair pv = eval_log_pair(params.m, v);
      out.lhs = std::abs(im_pair(pu.a, pv.a, u, v));
      out.rhs = frozen_constants().log35a_c * duv * duv;
      break;
    }
    case InequalityKind::LogReg35b: {
      if (duv == 0.0) return {0.0, 0.0, true};
      LogPair pu = eval_log_pair(params.m, u);
      LogPair pv = eval_log_pair(params.m, v);
      out.lhs = std::abs(im_pair(pu.b, pv.b, u, v));
      out.rhs = frozen_constants().log35b_c * duv * duv;
      break;
    }
    case InequalityKind::Monotone42: {
      cplx gu = eval_g_trunc(params.monotone_family, params.m, u);
      cplx gv = eval_g_trunc(params.monotone_family, params.m, v);
      out.lhs = std::real((gu - gv) * std::conj(u - v));
      out.rhs = 0.0;
      out.holds = out.lhs >= 0.0;
      return out;
    }
    case InequalityKind::HolderDamp: {
      if (duv == 0.0) return {0.0, 0.0, true};
      auto fam = NonlinearityFamily::damping(params.alpha);
      out.lhs = std::abs(eval_g(fam, u) - eval_g(fam, v));
      out.rhs = frozen_constants().holder_damp_c * std::pow(duv, 1.0 - params.alpha);
      break;
    }
  }
  out.holds = out.lhs <= out.rhs;
  return out;
}

}  // namespace nlslab
