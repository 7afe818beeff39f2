#include <doctest.h>

#include <cmath>

#include "evolution.hpp"
#include "initial_data.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using namespace nlslab;

namespace {
SchemeConfig damped_config(double m, double dt, double T) {
  SchemeConfig cfg;
  cfg.scheme = SchemeKind::DampedTruncated;
  cfg.family = NonlinearityFamily::damping(0.5);
  cfg.m = m;
  cfg.dt = dt;
  cfg.t_final = T;
  return cfg;
}
}  // namespace

TEST_CASE("linear substep: identity at tau 0, unitary, dense-oracle phase") {
  auto g = build_grid(DomainSpec::box1d(0.0, M_PI, M_PI / 32.0));
  SineTransform dst(g);
  Rng rng(9);
  GridFunction u(g);
  for (auto& z : u.v) z = rng.complex_normal();

  GridFunction same = linear_substep(u, 0.0, LinearSubstep::SpectralExact, &dst);
  for (std::size_t i = 0; i < u.v.size(); ++i) CHECK(same.v[i] == u.v[i]);

  double tau = 0.37;
  GridFunction spectral = linear_substep(u, tau, LinearSubstep::SpectralExact, &dst);
  CHECK(lp_norm(spectral, 2.0) == doctest::Approx(lp_norm(u, 2.0)).epsilon(1e-12));

  // dense spectral propagator as the independent oracle (32-point grid)
  GridFunction expm = oracle::dense_expm(u, tau);
  CHECK(lp_norm(spectral - expm, 2.0) <= 1e-10 * lp_norm(u, 2.0));

  GridFunction cn = linear_substep(u, 1e-3, LinearSubstep::CrankNicolson, nullptr, 1e-12);
  CHECK(lp_norm(cn, 2.0) == doctest::Approx(lp_norm(u, 2.0)).epsilon(1e-10));
  // CN is the (2,2) Pade approximant of the exponential; second-order accurate
  GridFunction exact_small = oracle::dense_expm(u, 1e-3);
  CHECK(lp_norm(cn - exact_small, 2.0) <= 1e-4 * lp_norm(u, 2.0));

  // a single sine mode advances by exactly its eigen-phase
  GridFunction s3 = sinemode_datum(g, 3, 1, 1.0);
  double dx = g->dx(0);
  double mu = 4.0 / (dx * dx) * std::pow(std::sin(1.5 * dx), 2);
  GridFunction adv = linear_substep(s3, tau, LinearSubstep::SpectralExact, &dst);
  cplx phase = std::polar(1.0, -mu * tau);
  for (std::size_t i = 0; i < s3.v.size(); ++i)
    CHECK(std::abs(adv.v[i] - phase * s3.v[i]) <= 1e-12);
}

TEST_CASE("nonlinear substep: log stationary point and power phase rate") {
  auto g = build_grid(DomainSpec::box1d(0.0, 1.0, 0.25));
  GridFunction u(g);
  for (auto& z : u.v) z = 1.0;  // log |u|^2 = 0
  auto lg = NonlinearityFamily::logarithmic();
  GridFunction after =
      nonlinear_substep(SchemeKind::LogSplitScheme, lg, kUntruncated, u, 0.7);
  for (const auto& z : after.v) CHECK(std::abs(z - cplx(1.0, 0.0)) <= 1e-15);

  GridFunction two(g);
  for (auto& z : two.v) z = 2.0;
  auto pw = NonlinearityFamily::power(1.0, 2.0);
  double tau = 0.31;
  GridFunction rot =
      nonlinear_substep(SchemeKind::TruncatedDirect, pw, kUntruncated, two, tau);
  cplx expect = 2.0 * std::polar(1.0, 4.0 * tau);  // rate r(2)/2 = 4
  for (const auto& z : rot.v) CHECK(std::abs(z - expect) <= 1e-14);
}

TEST_CASE("damping modulus flow closed forms") {
  // untruncated branch: rho(t) = (1 - t/2)^2 for alpha = 1/2, rho0 = 1
  CHECK(damped_modulus_flow(0.5, kUntruncated, 1.0, 0.5) ==
        doctest::Approx(std::pow(0.75, 2)).epsilon(1e-14));
  CHECK(damped_modulus_flow(0.5, kUntruncated, 1.0, 2.0) == 0.0);   // extinction
  CHECK(damped_modulus_flow(0.5, kUntruncated, 1.0, 5.0) == 0.0);   // stays extinct

  // linear branch: exponential decay with rate m^alpha
  double rho = damped_modulus_flow(0.5, 16.0, 0.01, 0.3);
  CHECK(rho == doctest::Approx(0.01 * std::exp(-4.0 * 0.3)).epsilon(1e-13));

  // threshold crossing matches the adaptive ODE oracle
  for (double m : {4.0, 64.0}) {
    for (double tau : {0.05, 0.4, 1.3}) {
      double got = damped_modulus_flow(0.5, m, 0.8, tau);
      double want = oracle::ode_modulus_flow(
          [&](double r) { return damping_profile(0.5, m, r); }, 0.8, tau);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("combined power+damping substep matches the complex ODE oracle") {
  auto fam = NonlinearityFamily::power_plus_damping(1.0, 2.0, 0.5);
  auto g = build_grid(DomainSpec::box1d(0.0, 1.0, 0.25));
  for (double m : {2.0, 16.0}) {
    for (cplx z0 : {cplx(0.9, 0.4), cplx(0.05, -0.02), cplx(3.0, 1.0)}) {
      for (double tau : {0.04, 0.35}) {
        GridFunction u(g);
        for (auto& z : u.v) z = z0;
        GridFunction got = nonlinear_substep(SchemeKind::PowerPlusDamping, fam, m, u, tau);
        // z' = i g_pow,m(z) - g_damp,m(z)
        cplx want = oracle::ode_complex_flow(
            [&](cplx z) {
              double rho = std::abs(z);
              if (rho == 0.0) return cplx(0.0, 0.0);
              cplx unit = z / rho;
              return cplx(0.0, 1.0) * unit * power_profile(1.0, 2.0, m, rho) -
                     unit * damping_profile(0.5, m, rho);
            },
            z0, tau, 1e-13);
        CHECK(std::abs(got.v[0] - want) <= 1e-8 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("evolve: zero datum stays zero in every scheme") {
  auto g = build_grid(DomainSpec::box1d(0.0, M_PI, M_PI / 32.0));
  GridFunction zero(g);
  for (auto kind : {SchemeKind::TruncatedDirect, SchemeKind::YosidaRegularized,
                    SchemeKind::LogSplitScheme, SchemeKind::DampedTruncated,
                    SchemeKind::PowerPlusDamping}) {
    SchemeConfig cfg;
    cfg.scheme = kind;
    switch (kind) {
      case SchemeKind::TruncatedDirect:
      case SchemeKind::YosidaRegularized:
        cfg.family = NonlinearityFamily::power(1.0, 2.0);
        break;
      case SchemeKind::LogSplitScheme: cfg.family = NonlinearityFamily::logarithmic(); break;
      case SchemeKind::DampedTruncated: cfg.family = NonlinearityFamily::damping(0.5); break;
      case SchemeKind::PowerPlusDamping:
        cfg.family = NonlinearityFamily::power_plus_damping(1.0, 2.0, 0.5);
        break;
    }
    cfg.m = 4.0;
    cfg.dt = 0.05;
    cfg.t_final = 0.2;
    TrajectoryRecord rec = evolve(cfg, zero);
    CHECK(rec.mass.back() == 0.0);
    CHECK_FALSE(rec.aborted);
  }
}

TEST_CASE("evolve: strang drift is second order (Richardson factor near 4)") {
  auto g = build_grid(DomainSpec::box1d(0.0, M_PI, M_PI / 64.0));
  GridFunction phi = gaussian_datum(g, {M_PI / 2.0}, 0.35, 1.0);
  auto drift = [&](double dt) {
    SchemeConfig cfg;
    cfg.scheme = SchemeKind::TruncatedDirect;
    cfg.family = NonlinearityFamily::power(1.0, 2.0);
    cfg.m = 64.0;  // truncation never activates
    cfg.dt = dt;
    cfg.t_final = 0.5;
    TrajectoryRecord rec = evolve(cfg, phi);
    double e0 = rec.energy_m.front(), worst = 0.0;
    for (double e : rec.energy_m) worst = std::max(worst, std::abs(e - e0));
    return worst;
  };
  double d1 = drift(2e-3);
  double d2 = drift(1e-3);
  CHECK(d1 / d2 >= 3.0);
  CHECK(d1 / d2 <= 5.0);
}

TEST_CASE("evolve: mass conservation and time reversibility") {
  auto g = build_grid(DomainSpec::box1d(0.0, M_PI, M_PI / 128.0));
  GridFunction phi = gaussian_datum(g, {M_PI / 2.0}, 0.3, 1.0);
  SchemeConfig cfg;
  cfg.scheme = SchemeKind::TruncatedDirect;
  cfg.family = NonlinearityFamily::power(-1.0, 2.0);
  cfg.m = 16.0;
  cfg.dt = 1e-3;
  cfg.t_final = 1.0;
  TrajectoryRecord rec = evolve(cfg, phi);
  double m0 = rec.mass.front();
  for (double m : rec.mass) CHECK(std::abs(m - m0) <= 1e-11 * m0);

  // run the strang composition backwards from the final state
  SineTransform dst(g);
  GridFunction u = rec.final_state;
  long steps = std::lround(cfg.t_final / cfg.dt);
  for (long s = 0; s < steps; ++s) {
    u = nonlinear_substep(cfg.scheme, cfg.family, cfg.m, u, -0.5 * cfg.dt);
    u = linear_substep(u, -cfg.dt, LinearSubstep::SpectralExact, &dst);
    u = nonlinear_substep(cfg.scheme, cfg.family, cfg.m, u, -0.5 * cfg.dt);
  }
  CHECK(lp_norm(u - phi, 2.0) <= 1e-10 * lp_norm(phi, 2.0));
}

TEST_CASE("evolve: inactive truncation is bitwise identical to untruncated") {
  auto g = build_grid(DomainSpec::box1d(0.0, M_PI, M_PI / 64.0));
  GridFunction phi = gaussian_datum(g, {M_PI / 2.0}, 0.3, 0.8);
  SchemeConfig cfg;
  cfg.scheme = SchemeKind::TruncatedDirect;
  cfg.family = NonlinearityFamily::power(1.0, 2.0);
  cfg.dt = 1e-2;
  cfg.t_final = 0.3;
  cfg.m = 32.0;  // far above any reachable amplitude
  TrajectoryRecord trunc = evolve(cfg, phi);
  cfg.m = kUntruncated;
  TrajectoryRecord untrunc = evolve(cfg, phi);
  for (std::size_t i = 0; i < trunc.final_state.v.size(); ++i)
    CHECK(trunc.final_state.v[i] == untrunc.final_state.v[i]);
}

TEST_CASE("damped scheme: monotone mass, H1 bound, dissipation identity") {
  auto g = build_grid(DomainSpec::box1d(-2.0, 2.0, 1.0 / 64.0));
  GridFunction phi = gaussian_datum(g, {0.0}, 0.4, 1.0);
  SchemeConfig cfg = damped_config(16.0, 1e-3, 0.5);
  cfg.snapshot_stride = 50;
  TrajectoryRecord rec = evolve(cfg, phi);

  double h1_0 = rec.h1.front();
  for (std::size_t i = 1; i < rec.times.size(); ++i) {
    CHECK(rec.mass[i] <= rec.mass[i - 1] * (1.0 + 1e-9));
    CHECK(rec.h1[i] <= h1_0 * (1.0 + 1e-8));
  }

  // d/dt M = -2 int r_m(|u|) |u| within quadrature error, against the
  // centered difference of the recorded mass series
  const double meas = g->cell_measure();
  for (std::size_t s = 1; s + 1 < rec.snapshots.size(); ++s) {
    double dissipation = 0.0;
    for (const auto& z : rec.snapshots[s].v) {
      double rho = std::abs(z);
      dissipation += damping_profile(0.5, cfg.m, rho) * rho;
    }
    dissipation *= -2.0 * meas;
    std::size_t stride = 50;
    double t_gap = 2.0 * stride * cfg.dt;
    double fd = (rec.mass[std::min((s + 1) * stride, rec.mass.size() - 1)] -
                 rec.mass[(s - 1) * stride]) /
                t_gap;
    CHECK(fd == doctest::Approx(dissipation).epsilon(0.02));
  }
}

TEST_CASE("damped substep reaches exact extinction") {
  auto g = build_grid(DomainSpec::box1d(0.0, 1.0, 0.25));
  GridFunction u(g);
  for (auto& z : u.v) z = cplx(0.6, 0.8);  // modulus 1
  auto fam = NonlinearityFamily::damping(0.5);
  GridFunction gone =
      nonlinear_substep(SchemeKind::DampedTruncated, fam, kUntruncated, u, 2.0);
  CHECK(lp_norm(gone, 2.0) == 0.0);
  CHECK_THROWS_AS(
      nonlinear_substep(SchemeKind::DampedTruncated, fam, kUntruncated, u, -0.1),
      std::invalid_argument);
}

TEST_CASE("yosida scheme conserves mass per substep to 1e-10") {
  auto g = build_grid(DomainSpec::box1d(0.0, M_PI, M_PI / 48.0));
  GridFunction phi = gaussian_datum(g, {M_PI / 2.0}, 0.4, 1.0);
  SchemeConfig cfg;
  cfg.scheme = SchemeKind::YosidaRegularized;
  cfg.family = NonlinearityFamily::power(1.0, 2.0);
  cfg.m = 16.0;
  cfg.dt = 0.02;
  cfg.t_final = 0.2;
  TrajectoryRecord rec = evolve(cfg, phi);
  double m0 = rec.mass.front();
  // 10 steps, each with two nonlinear half-kicks at 1e-10 drift budget
  CHECK(std::abs(rec.mass.back() - m0) <= 30.0 * 1e-10 * m0);
  CHECK_FALSE(rec.aborted);
}

TEST_CASE("energy closed form matches direct quadrature for the cubic family") {
  auto g = build_grid(DomainSpec::box2d(0.0, 1.0, 0.0, 1.0, 1.0 / 24.0, 1.0 / 24.0));
  Rng rng(13);
  GridFunction u(g);
  for (auto& z : u.v) z = rng.complex_normal();
  auto pw = NonlinearityFamily::power(1.0, 2.0);
  double e = energy(pw, kUntruncated, u);
  double semi = h1_seminorm(u);
  double l4 = lp_norm(u, 4.0);
  CHECK(e == doctest::Approx(0.5 * semi * semi - 0.25 * std::pow(l4, 4)).epsilon(1e-12));
}

TEST_CASE("log energy limit: E_m -> E + M/2 from below in truncation level") {
  auto g = build_grid(DomainSpec::box1d(-2.0, 2.0, 1.0 / 256.0));
  // moduli straddle e^-3 and reach far below the smallest 1/m
  GridFunction phi = gaussian_datum(g, {0.0}, 0.22, 1.0);
  auto lg = NonlinearityFamily::logarithmic();
  double target = energy(lg, kUntruncated, phi) + 0.5 * std::pow(lp_norm(phi, 2.0), 2);
  double prev = 1e300;
  for (int e = 5; e <= 14; e += 3) {
    double m = std::ldexp(1.0, e);
    double gap = std::abs(energy(lg, m, phi) - target);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("evolve aborts on overflow and keeps the last good state") {
  auto g = build_grid(DomainSpec::box1d(0.0, M_PI, M_PI / 16.0));
  GridFunction phi(g);
  for (auto& z : phi.v) z = 1e200;  // untruncated cubic phase rate overflows
  SchemeConfig cfg;
  cfg.scheme = SchemeKind::TruncatedDirect;
  cfg.family = NonlinearityFamily::power(1.0, 2.0);
  cfg.m = kUntruncated;
  cfg.dt = 0.1;
  cfg.t_final = 0.3;
  TrajectoryRecord rec = evolve(cfg, phi);
  CHECK(rec.aborted);
  CHECK(rec.abort_time == doctest::Approx(0.1));
  CHECK(rec.final_state.finite());
}

TEST_CASE("scheme config validation") {
  auto g = build_grid(DomainSpec::box1d(0.0, 1.0, 0.1));
  SchemeConfig cfg;
  cfg.scheme = SchemeKind::DampedTruncated;
  cfg.family = NonlinearityFamily::power(1.0, 2.0);  // mismatched family
  cfg.dt = 0.01;
  cfg.t_final = 0.1;
  CHECK_THROWS_AS(cfg.validate(*g), std::invalid_argument);

  DomainSpec holed = DomainSpec::box1d(0.0, 1.0, 0.1);
  holed.mask.assign(11, 1);
  holed.mask[5] = 0;
  auto gm = build_grid(holed);
  SchemeConfig sp;
  sp.scheme = SchemeKind::TruncatedDirect;
  sp.family = NonlinearityFamily::power(1.0, 2.0);
  sp.dt = 0.01;
  sp.t_final = 0.1;
  sp.linear = LinearSubstep::SpectralExact;
  CHECK_THROWS_AS(sp.validate(*gm), std::invalid_argument);
}
