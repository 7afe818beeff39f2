#include "evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "logsplit.hpp"

namespace nlslab {

std::string scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::TruncatedDirect: return "truncated_direct";
    case SchemeKind::YosidaRegularized: return "yosida";
    case SchemeKind::LogSplitScheme: return "log_split";
    case SchemeKind::DampedTruncated: return "damped";
    case SchemeKind::PowerPlusDamping: return "power_damped";
  }
  return "?";
}

SchemeKind scheme_from_name(const std::string& name) {
  if (name == "truncated_direct") return SchemeKind::TruncatedDirect;
  if (name == "yosida") return SchemeKind::YosidaRegularized;
  if (name == "log_split") return SchemeKind::LogSplitScheme;
  if (name == "damped") return SchemeKind::DampedTruncated;
  if (name == "power_damped") return SchemeKind::PowerPlusDamping;
  throw std::invalid_argument("scheme: unknown kind " + name);
}

void SchemeConfig::validate(const Grid& grid) const {
  family.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("scheme: dt must be positive");
  if (!(t_final >= dt)) throw std::invalid_argument("scheme: need dt <= t_final");
  if (!(m >= 1.0)) throw std::invalid_argument("scheme: truncation level m must be >= 1");
  if (linear == LinearSubstep::SpectralExact && !grid.full_rectangle())
    throw std::invalid_argument("scheme: SpectralExact needs a full-rectangle mask");
  auto expect = [&](FamilyKind k) {
    if (family.kind != k)
      throw std::invalid_argument("scheme: family does not match scheme kind");
  };
  switch (scheme) {
    case SchemeKind::TruncatedDirect:
    case SchemeKind::YosidaRegularized: expect(FamilyKind::PowerLocal); break;
    case SchemeKind::LogSplitScheme: expect(FamilyKind::Logarithmic); break;
    case SchemeKind::DampedTruncated: expect(FamilyKind::Damping); break;
    case SchemeKind::PowerPlusDamping: expect(FamilyKind::PowerPlusDamping); break;
  }
}

GridFunction linear_substep(const GridFunction& u, double tau, LinearSubstep kind,
                            const SineTransform* dst, double cn_tol) {
  if (tau == 0.0) return u;
  if (kind == LinearSubstep::SpectralExact) {
    if (!dst) throw std::invalid_argument("linear_substep: missing sine transform");
    GridFunction out = u;
    dst->apply_multiplier(out, [tau](double mu) {
      return std::polar(1.0, -mu * tau);  // e^{i tau Lap} on the -mu eigenspace
    });
    return out;
  }
  // Crank-Nicolson through the normal equations: A = I - i(tau/2)Lap commutes
  // with Lap, so A*A = I + (tau/2)^2 Lap^2 is Hermitian positive definite and
  // u+ = (A*A)^{-1} A* (I + i(tau/2)Lap) u.
  const double h = 0.5 * tau;
  GridFunction lap_u = apply_laplacian(u);
  GridFunction lap2_u = apply_laplacian(lap_u);
  GridFunction rhs = u;
  axpy(cplx(0.0, 2.0 * h), lap_u, rhs);
  axpy(-h * h, lap2_u, rhs);  // (I + ih Lap)^2 u
  LinearOp normal_op = [h](const GridFunction& x) {
    GridFunction lx = apply_laplacian(x);
    GridFunction llx = apply_laplacian(lx);
    GridFunction y = x;
    axpy(h * h, llx, y);
    return y;
  };
  int max_iter = static_cast<int>(20 * u.grid->interior_count() + 200);
  return conjugate_gradient(normal_op, rhs, cn_tol, max_iter);
}

double damped_modulus_flow(double alpha, double m, double rho0, double tau) {
  if (rho0 <= 0.0) return 0.0;
  double thresh = std::isinf(m) ? 0.0 : 1.0 / m;
  double rho = rho0;
  double t_rem = tau;
  if (rho > thresh) {
    // (rho^a)' = -a on this branch
    double t_exit = (std::pow(rho, alpha) - std::pow(thresh, alpha)) / alpha;
    if (t_rem < t_exit) {
      double pa = std::pow(rho, alpha) - alpha * t_rem;
      return std::pow(pa, 1.0 / alpha);
    }
    rho = thresh;
    t_rem -= t_exit;
    if (rho == 0.0) return 0.0;  // finite-time extinction
  }
  return rho * std::exp(-std::pow(m, alpha) * t_rem);
}

namespace {
// time for the nonlinear damping branch to carry rho_from down to rho_to
double branch_time(double alpha, double rho_from, double rho_to) {
  return (std::pow(rho_from, alpha) - std::pow(rho_to, alpha)) / alpha;
}

// integral of rho(s)^sigma over [0,t] while rho^alpha decays linearly
double power_phase_nonlinear(double sigma, double alpha, double rho_in, double rho_out) {
  return (std::pow(rho_in, sigma + alpha) - std::pow(rho_out, sigma + alpha)) /
         (sigma + alpha);
}
}  // namespace

double damped_phase_advance(const NonlinearityFamily& family, double m, double rho0,
                            double tau) {
  const double sigma = family.sigma;
  const double lambda = family.lambda;
  const double alpha = family.alpha;
  if (rho0 <= 0.0 || tau <= 0.0) return 0.0;
  double thresh = std::isinf(m) ? 0.0 : 1.0 / m;
  double theta = 0.0;
  double rho = rho0;
  double t_rem = tau;

  // segment with the power part saturated: |u| >= m, phase rate lambda m^sigma
  if (!std::isinf(m) && rho >= m) {
    double t_seg = std::min(t_rem, branch_time(alpha, rho, m));
    double rho_end = std::pow(std::pow(rho, alpha) - alpha * t_seg, 1.0 / alpha);
    theta += lambda * std::pow(m, sigma) * t_seg;
    rho = rho_end;
    t_rem -= t_seg;
    if (t_rem <= 0.0) return theta;
  }

  // segment thresh <= |u| <= m: rate lambda rho^sigma along the nonlinear branch
  if (rho > thresh) {
    double t_seg = std::min(t_rem, branch_time(alpha, rho, thresh));
    double rho_end = std::pow(std::max(std::pow(rho, alpha) - alpha * t_seg, 0.0),
                              1.0 / alpha);
    theta += lambda * power_phase_nonlinear(sigma, alpha, rho, rho_end);
    rho = rho_end;
    t_rem -= t_seg;
    if (t_rem <= 0.0 || rho == 0.0) return theta;
  }

  // linear damping tail: rho(s) = rho e^{-m^a s}, rate lambda rho(s)^sigma
  double k = std::pow(m, alpha);
  double x = sigma * k * t_rem;
  double integral = x < 1e-12 ? t_rem : -std::expm1(-x) / (sigma * k);
  theta += lambda * std::pow(rho, sigma) * integral;
  return theta;
}

namespace {
GridFunction phase_rotation_substep(const NonlinearityFamily& family, double m,
                                    const GridFunction& u, double tau) {
  GridFunction out(u.grid);
  const bool log_family = family.kind == FamilyKind::Logarithmic;
  for (std::size_t i = 0; i < u.v.size(); ++i) {
    double rho = std::abs(u.v[i]);
    if (rho == 0.0) {
      out.v[i] = 0.0;
      continue;
    }
    double rate = log_family ? log_profile(m, rho) / rho
                             : power_profile(family.lambda, family.sigma, m, rho) / rho;
    out.v[i] = u.v[i] * std::polar(1.0, tau * rate);
  }
  return out;
}

GridFunction damped_substep(const NonlinearityFamily& family, double m,
                            const GridFunction& u, double tau, bool with_power) {
  if (tau < 0.0)
    throw std::invalid_argument("nonlinear_substep: dissipative flow needs tau >= 0");
  GridFunction out(u.grid);
  for (std::size_t i = 0; i < u.v.size(); ++i) {
    double rho = std::abs(u.v[i]);
    if (rho == 0.0) {
      out.v[i] = 0.0;
      continue;
    }
    double rho_new = damped_modulus_flow(family.alpha, m, rho, tau);
    cplx val = u.v[i] * (rho_new / rho);
    if (with_power && rho_new > 0.0)
      val *= std::polar(1.0, damped_phase_advance(family, m, rho, tau));
    out.v[i] = val;
  }
  return out;
}

GridFunction yosida_substep(const NonlinearityFamily& family, const YosidaOperator& jm,
                            const GridFunction& u, double tau) {
  auto rhs = [&](const GridFunction& w) {
    GridFunction jw = jm.apply(w);
    GridFunction gjw(w.grid);
    for (std::size_t i = 0; i < jw.v.size(); ++i) gjw.v[i] = eval_g(family, jw.v[i]);
    GridFunction r = jm.apply(gjw);
    return cplx(0.0, 1.0) * r;  // u' = i J_m g(J_m u)
  };
  const double mass0 = std::real(inner(u, u));
  const double floor = std::max(mass0, 1e-30);
  for (int nsub = 1; nsub <= (1 << 16); nsub *= 2) {
    GridFunction w = u;
    double h = tau / nsub;
    for (int s = 0; s < nsub; ++s) {
      GridFunction k1 = rhs(w);
      GridFunction w2 = w;
      axpy(0.5 * h, k1, w2);
      GridFunction k2 = rhs(w2);
      GridFunction w3 = w;
      axpy(0.5 * h, k2, w3);
      GridFunction k3 = rhs(w3);
      GridFunction w4 = w;
      axpy(h, k3, w4);
      GridFunction k4 = rhs(w4);
      axpy(h / 6.0, k1, w);
      axpy(h / 3.0, k2, w);
      axpy(h / 3.0, k3, w);
      axpy(h / 6.0, k4, w);
    }
    double drift = std::abs(std::real(inner(w, w)) - mass0) / floor;
    if (drift < 1e-10) return w;
  }
  throw SolverError("yosida substep: mass drift did not reach 1e-10 under halving", {});
}
}  // namespace

GridFunction nonlinear_substep(SchemeKind scheme, const NonlinearityFamily& family,
                               double m, const GridFunction& u, double tau,
                               const YosidaOperator* jm) {
  switch (scheme) {
    case SchemeKind::TruncatedDirect:
    case SchemeKind::LogSplitScheme:
      return phase_rotation_substep(family, m, u, tau);
    case SchemeKind::DampedTruncated:
      return damped_substep(family, m, u, tau, false);
    case SchemeKind::PowerPlusDamping:
      return damped_substep(family, m, u, tau, true);
    case SchemeKind::YosidaRegularized:
      if (!jm) throw std::invalid_argument("nonlinear_substep: missing resolvent");
      return yosida_substep(family, *jm, u, tau);
  }
  throw std::logic_error("nonlinear_substep: bad scheme");
}

double energy(const NonlinearityFamily& family, double m, const GridFunction& u) {
  double semi = h1_seminorm(u);
  double kinetic = 0.5 * semi * semi;
  const double meas = u.grid->cell_measure();
  double potential = 0.0;
  if (family.kind == FamilyKind::Logarithmic && std::isinf(m)) {
    for (const auto& z : u.v) {
      double rho2 = std::norm(z);
      if (rho2 > 0.0) potential += 0.5 * rho2 * std::log(rho2);
    }
    return kinetic - potential * meas;
  }
  if (family.kind == FamilyKind::Damping) return kinetic;
  for (const auto& z : u.v) potential += antiderivative(family, m, std::abs(z));
  return kinetic - potential * meas;
}

double yosida_energy(const NonlinearityFamily& family, const YosidaOperator& jm,
                     const GridFunction& u) {
  double semi = h1_seminorm(u);
  GridFunction ju = jm.apply(u);
  double potential = 0.0;
  for (const auto& z : ju.v) potential += antiderivative(family, kUntruncated, std::abs(z));
  return 0.5 * semi * semi - potential * u.grid->cell_measure();
}

TrajectoryRecord evolve(const SchemeConfig& config, const GridFunction& phi) {
  const GridPtr grid = phi.grid;
  config.validate(*grid);
  if (!phi.finite()) throw std::invalid_argument("evolve: initial datum is not finite");

  std::shared_ptr<SineTransform> dst;
  if (config.linear == LinearSubstep::SpectralExact)
    dst = std::make_shared<SineTransform>(grid);
  std::shared_ptr<YosidaOperator> jm;
  if (config.scheme == SchemeKind::YosidaRegularized)
    jm = std::make_shared<YosidaOperator>(grid, config.m);

  const long n_steps = std::lround(config.t_final / config.dt);
  const bool log_family = config.family.kind == FamilyKind::Logarithmic;

  TrajectoryRecord rec;
  GridFunction u = phi;

  auto record_diag = [&](double t) {
    rec.times.push_back(t);
    double l2 = lp_norm(u, 2.0);
    rec.mass.push_back(l2 * l2);
    rec.h1.push_back(h1_norm(u));
    rec.energy.push_back(energy(config.family, kUntruncated, u));
    rec.energy_m.push_back(jm ? yosida_energy(config.family, *jm, u)
                              : energy(config.family, config.m, u));
    rec.linf.push_back(linf_norm(u));
    if (log_family) rec.luxemburg.push_back(luxemburg_norm(u));
  };
  auto record_snapshot = [&](double t) {
    rec.snapshot_times.push_back(t);
    rec.snapshots.push_back(u);
  };

  record_diag(0.0);
  if (config.snapshot_stride > 0) record_snapshot(0.0);

  for (long step = 1; step <= n_steps; ++step) {
    GridFunction prev = u;
    u = nonlinear_substep(config.scheme, config.family, config.m, u, 0.5 * config.dt,
                          jm.get());
    u = linear_substep(u, config.dt, config.linear, dst.get(), config.cn_tol);
    u = nonlinear_substep(config.scheme, config.family, config.m, u, 0.5 * config.dt,
                          jm.get());
    double t = step * config.dt;
    if (!u.finite()) {
      rec.aborted = true;
      rec.abort_time = t;
      u = std::move(prev);
      break;
    }
    if (step % std::max(config.diagnostic_stride, 1) == 0 || step == n_steps)
      record_diag(t);
    if (config.snapshot_stride > 0 && (step % config.snapshot_stride == 0 || step == n_steps))
      record_snapshot(t);
  }

  rec.final_state = std::move(u);
  rec.t_final = rec.times.empty() ? 0.0 : rec.times.back();
  return rec;
}

}  // namespace nlslab
