#include "verify_suites.hpp"

#include <cmath>
#include <complex>

#include "convergence.hpp"
#include "evolution.hpp"
#include "experiment.hpp"
#include "frozen_constants.hpp"
#include "initial_data.hpp"
#include "logsplit.hpp"
#include "nonlinearity.hpp"
#include "resolvent.hpp"
#include "rng.hpp"

namespace nlslab {

namespace {
constexpr double kTwoPi = 6.283185307179586477;

void track(CheckResult& c, bool ok, double margin) {
  ++c.samples;
  if (!ok) ++c.violations;
  if (std::isfinite(margin)) c.worst = std::max(c.worst, margin);
}
}  // namespace

std::vector<CheckResult> verify_pointwise(std::uint64_t samples, std::uint64_t seed) {
  std::vector<CheckResult> out;
  Rng rng(seed);

  {
    CheckResult c;
    c.name = "lemma34_log_constant2";
    Rng r = rng.fork(1);
    for (std::uint64_t i = 0; i < samples; ++i) {
      cplx u = r.log_uniform_complex(1e-12, 1e6);
      cplx v = r.log_uniform_complex(1e-12, 1e6);
      auto chk = inequality_oracle(InequalityKind::Log34, u, v, {});
      track(c, chk.holds, chk.rhs > 0.0 ? chk.lhs / chk.rhs : 0.0);
    }
    out.push_back(c);
  }

  {
    CheckResult c;
    c.name = "lemma42_monotone_sign";
    c.note = "profiles: truncated power, truncated damping, a_m, b_m";
    Rng r = rng.fork(2);
    for (std::uint64_t i = 0; i < samples; ++i) {
      cplx u = r.log_uniform_complex(1e-12, 1e6);
      cplx v = r.log_uniform_complex(1e-12, 1e6);
      double m = std::floor(r.log_uniform(1.0, 32768.0));
      double lhs = 0.0;
      switch (i % 4) {
        case 0: {
          OracleParams p;
          p.m = m;
          p.monotone_family = NonlinearityFamily::power(1.0, 2.0);
          lhs = inequality_oracle(InequalityKind::Monotone42, u, v, p).lhs;
          break;
        }
        case 1: {
          OracleParams p;
          p.m = m;
          p.monotone_family = NonlinearityFamily::damping(r.uniform(0.05, 0.95));
          lhs = inequality_oracle(InequalityKind::Monotone42, u, v, p).lhs;
          break;
        }
        case 2: {
          LogPair pu = eval_log_pair(m, u), pv = eval_log_pair(m, v);
          lhs = std::real((pu.a - pv.a) * std::conj(u - v));
          break;
        }
        case 3: {
          LogPair pu = eval_log_pair(m, u), pv = eval_log_pair(m, v);
          lhs = std::real((pu.b - pv.b) * std::conj(u - v));
          break;
        }
      }
      track(c, lhs >= 0.0, lhs >= 0.0 ? 0.0 : 1.0 + std::abs(lhs));
    }
    out.push_back(c);
  }

  {
    CheckResult c;
    c.name = "lip24_frozen_constant";
    Rng r = rng.fork(3);
    for (std::uint64_t i = 0; i < samples; ++i) {
      OracleParams p;
      p.m = std::floor(r.log_uniform(1.0, 32768.0));
      p.lambda = 1.0;
      p.sigma = 2.0;
      cplx u = r.log_uniform_complex(1e-6, 1e3);
      cplx v = r.log_uniform_complex(1e-6, 1e3);
      auto chk = inequality_oracle(InequalityKind::Lip24, u, v, p);
      track(c, chk.holds, chk.rhs > 0.0 ? chk.lhs / chk.rhs : 0.0);
    }
    out.push_back(c);
  }

  {
    CheckResult ca, cb;
    ca.name = "lemma35a_frozen_constant";
    cb.name = "lemma35b_frozen_constant";
    ca.note = cb.note = "one constant across n = 2^5..2^15";
    Rng r = rng.fork(4);
    std::uint64_t per_n = std::max<std::uint64_t>(samples / 10, 1);
    for (int e = 5; e <= 15; ++e) {
      OracleParams p;
      p.m = std::ldexp(1.0, e);
      for (std::uint64_t i = 0; i < per_n; ++i) {
        cplx u = r.log_uniform_complex(1e-9, 1e3);
        cplx v = r.log_uniform_complex(1e-9, 1e3);
        auto a = inequality_oracle(InequalityKind::LogReg35a, u, v, p);
        track(ca, a.holds, a.rhs > 0.0 ? a.lhs / a.rhs : 0.0);
        auto b = inequality_oracle(InequalityKind::LogReg35b, u, v, p);
        track(cb, b.holds, b.rhs > 0.0 ? b.lhs / b.rhs : 0.0);
      }
    }
    out.push_back(ca);
    out.push_back(cb);
  }

  {
    CheckResult c;
    c.name = "holder_damping_frozen_constant";
    Rng r = rng.fork(5);
    for (std::uint64_t i = 0; i < samples; ++i) {
      OracleParams p;
      p.alpha = r.uniform(0.05, 0.95);
      cplx u = r.log_uniform_complex(1e-9, 1e3);
      cplx v = r.log_uniform_complex(1e-9, 1e3);
      auto chk = inequality_oracle(InequalityKind::HolderDamp, u, v, p);
      track(c, chk.holds, chk.rhs > 0.0 ? chk.lhs / chk.rhs : 0.0);
    }
    out.push_back(c);
  }

  {
    CheckResult c;
    c.name = "gauge_equivariance";
    Rng r = rng.fork(6);
    const NonlinearityFamily fams[4] = {
        NonlinearityFamily::power(1.0, 2.0), NonlinearityFamily::logarithmic(),
        NonlinearityFamily::damping(0.5),
        NonlinearityFamily::power_plus_damping(1.0, 2.0, 0.5)};
    std::uint64_t n = std::max<std::uint64_t>(samples / 4, 1);
    for (std::uint64_t i = 0; i < n; ++i) {
      cplx z = r.log_uniform_complex(1e-10, 1e4);
      double th = r.uniform(0.0, kTwoPi);
      cplx rot = std::polar(1.0, th);
      for (const auto& fam : fams) {
        cplx a = eval_g(fam, rot * z);
        cplx b = rot * eval_g(fam, z);
        double scale = std::max(std::abs(a), 1e-30);
        track(c, std::abs(a - b) <= 1e-12 * scale, std::abs(a - b) / (1e-12 * scale));
      }
    }
    out.push_back(c);
  }

  {
    CheckResult c;
    c.name = "truncation_consistency";
    c.note = "power exact once m >= K; damping <= 2 m^(a-1); a-part <= 4 log(m)/m";
    Rng r = rng.fork(7);
    std::uint64_t n = std::max<std::uint64_t>(samples / 8, 1);
    auto pw = NonlinearityFamily::power(1.0, 2.0);
    auto dp = NonlinearityFamily::damping(0.5);
    for (std::uint64_t i = 0; i < n; ++i) {
      double K = r.log_uniform(0.1, 100.0);
      cplx z = std::polar(r.uniform(0.0, K), r.uniform(0.0, kTwoPi));
      double m = std::ceil(K) + std::floor(r.uniform(0.0, 4.0));
      track(c, eval_g_trunc(pw, m, z) == eval_g(pw, z), 0.0);

      double md = std::floor(r.log_uniform(2.0, 4096.0));
      double diff = std::abs(eval_g_trunc(dp, md, z) - eval_g(dp, z));
      double cap = 2.0 * std::pow(md, -0.5);
      track(c, diff <= cap * (1.0 + 1e-12), cap > 0.0 ? diff / cap : 0.0);

      double ml = std::floor(r.log_uniform(32.0, 32768.0));
      LogPair tp = eval_log_pair(ml, z);
      LogPair fp = eval_log_pair(kUntruncated, z);
      double da = std::abs(tp.a - fp.a);
      double capa = 4.0 * std::log(ml) / ml;
      track(c, da <= capa * (1.0 + 1e-12), capa > 0.0 ? da / capa : 0.0);
    }
    out.push_back(c);
  }

  return out;
}

namespace {
GridPtr yosida_grid() {
  // 64x64 interior points on the unit square
  return build_grid(DomainSpec::box2d(0.0, 1.0, 0.0, 1.0, 1.0 / 65.0, 1.0 / 65.0));
}

GridPtr masked_grid() {
  DomainSpec spec = DomainSpec::box2d(0.0, 1.0, 0.0, 1.0, 1.0 / 17.0, 1.0 / 17.0);
  int n = 18;
  spec.mask.assign(n * n, 1);
  // carve out a 3x3 block so the rectangle fast path is unavailable
  for (int iy = 7; iy < 10; ++iy)
    for (int ix = 7; ix < 10; ++ix) spec.mask[iy * n + ix] = 0;
  return build_grid(spec);
}
}  // namespace

std::vector<CheckResult> verify_yosida(std::uint64_t samples, std::uint64_t seed) {
  std::vector<CheckResult> out;
  Rng rng(seed);
  GridPtr grid = yosida_grid();
  const std::uint64_t fields = std::min<std::uint64_t>(std::max<std::uint64_t>(samples, 1), 1000);

  const double ms[3] = {4.0, 64.0, 1024.0};
  {
    CheckResult contraction, adjoint, smoothing, tm_id, tm_bounds, l24;
    contraction.name = "contraction_l2_h1";
    adjoint.name = "self_adjointness";
    smoothing.name = "smoothing_quadratic_form";
    tm_id.name = "tm_identity";
    tm_bounds.name = "tm_norm_bounds";
    l24.name = "lemma24_pairwise_bound";
    Rng r = rng.fork(11);
    for (std::uint64_t i = 0; i < fields; ++i) {
      GridFunction f = random_pointwise_field(grid, r);
      GridFunction g = random_pointwise_field(grid, r);
      double f2 = lp_norm(f, 2.0), fh1 = h1_norm(f), g2 = lp_norm(g, 2.0);
      for (double m : ms) {
        YosidaOperator jm(grid, m);
        GridFunction jf = jm.apply(f);
        track(contraction, lp_norm(jf, 2.0) <= f2 * (1.0 + 1e-10),
              f2 > 0 ? lp_norm(jf, 2.0) / f2 : 0.0);
        track(contraction, h1_norm(jf) <= fh1 * (1.0 + 1e-10),
              fh1 > 0 ? h1_norm(jf) / fh1 : 0.0);

        GridFunction jg = jm.apply(g);
        double lhs = std::abs(inner(jf, g) - inner(f, jg));
        double cap = 1e-10 * f2 * g2;
        track(adjoint, lhs <= cap, cap > 0 ? lhs / cap : 0.0);

        double h1sq = h1_norm(jf);
        double quad = m * std::real(inner(jf, f));
        track(smoothing, h1sq * h1sq <= quad * (1.0 + 1e-9) + 1e-12,
              quad > 0 ? h1sq * h1sq / quad : 0.0);

        GridFunction lhs_tm = apply_laplacian(jf);
        GridFunction rhs_tm = cplx(m, 0.0) * (jf - f);
        double err = lp_norm(lhs_tm - rhs_tm, 2.0);
        double scale = 1e-8 * std::max(1.0, lp_norm(rhs_tm, 2.0));
        track(tm_id, err <= scale, scale > 0 ? err / scale : 0.0);

        double tm2 = lp_norm(jm.apply_tm(f), 2.0);
        track(tm_bounds, tm2 <= 2.0 * m * f2 * (1.0 + 1e-10),
              f2 > 0 ? tm2 / (2.0 * m * f2) : 0.0);
        track(tm_bounds, tm2 <= std::sqrt(2.0 * m) * fh1 * (1.0 + 1e-10),
              fh1 > 0 ? tm2 / (std::sqrt(2.0 * m) * fh1) : 0.0);
      }
      YosidaOperator j4(grid, 4.0), j32(grid, 32.0);
      auto diff = yosida_difference(j4, j32, f);
      track(l24, diff.dist <= diff.bound * (1.0 + 1e-10),
            diff.bound > 0 ? diff.dist / diff.bound : 0.0);
    }
    out.push_back(contraction);
    out.push_back(adjoint);
    out.push_back(smoothing);
    out.push_back(tm_id);
    out.push_back(tm_bounds);
    out.push_back(l24);
  }

  {
    CheckResult c;
    c.name = "lemma24_dyadic_slope";
    c.note = "H1-critical spectral data, m = 2^4..2^12, target -0.5 +- 0.1";
    // box (0,4)^2 keeps the whole m range inside the resolved spectral
    // window (mu_min ~ 1.2, mu_max ~ 2000 on 64 modes per axis)
    GridPtr wide = build_grid(DomainSpec::box2d(0.0, 4.0, 0.0, 4.0, 4.0 / 65.0, 4.0 / 65.0));
    Rng r = rng.fork(12);
    GridFunction v = random_spectral_field(wide, r, 2.1);
    double h1 = h1_norm(v);
    v = cplx(1.0 / h1, 0.0) * v;
    std::vector<double> mlist, dlist;
    for (int e = 4; e <= 11; ++e) {
      double m = std::ldexp(1.0, e);
      YosidaOperator jm(wide, m), j2m(wide, 2.0 * m);
      mlist.push_back(m);
      dlist.push_back(yosida_difference(jm, j2m, v).dist);
    }
    RateFit fit = fit_rate(mlist, dlist);
    bool ok = std::abs(fit.exponent + 0.5) <= 0.1;
    c.samples = mlist.size();
    c.violations = ok ? 0 : 1;
    c.worst = std::abs(fit.exponent + 0.5) / 0.1;
    out.push_back(c);
  }

  {
    CheckResult c;
    c.name = "resolvent_identity_limit";
    c.note = "smooth data: ||J_m f - f|| ~ 1/m, slope within -1 +- 0.15";
    GridPtr line = build_grid(DomainSpec::box1d(0.0, M_PI, M_PI / 256.0));
    GridFunction f = sinemode_datum(line, 1, 1, 1.0);
    std::vector<double> mlist, dlist;
    for (double m : {10.0, 100.0, 1000.0, 10000.0}) {
      YosidaOperator jm(line, m);
      mlist.push_back(m);
      dlist.push_back(lp_norm(jm.apply(f) - f, 2.0));
    }
    RateFit fit = fit_rate(mlist, dlist);
    bool ok = std::abs(fit.exponent + 1.0) <= 0.15;
    c.samples = mlist.size();
    c.violations = ok ? 0 : 1;
    c.worst = std::abs(fit.exponent + 1.0) / 0.15;
    out.push_back(c);
  }

  {
    CheckResult c;
    c.name = "solver_cross_checks";
    c.note = "CG and dense agree with FST; CG respects masked grids";
    Rng r = rng.fork(13);
    GridPtr small = build_grid(DomainSpec::box2d(0.0, 1.0, 0.0, 1.0, 0.1, 0.1));
    GridFunction f = random_pointwise_field(small, r);
    for (double m : {2.0, 50.0}) {
      YosidaOperator fst(small, m, ResolventSolver::FastSineTransform);
      YosidaOperator cg(small, m, ResolventSolver::ConjugateGradient);
      YosidaOperator dd(small, m, ResolventSolver::DenseDirect);
      GridFunction a = fst.apply(f), b = cg.apply(f), d = dd.apply(f);
      double scale = lp_norm(a, 2.0);
      track(c, lp_norm(a - b, 2.0) <= 1e-9 * scale, lp_norm(a - b, 2.0) / (1e-9 * scale));
      track(c, lp_norm(a - d, 2.0) <= 1e-9 * scale, lp_norm(a - d, 2.0) / (1e-9 * scale));
    }
    GridPtr holes = masked_grid();
    GridFunction fm = random_pointwise_field(holes, r);
    YosidaOperator jcg(holes, 16.0);
    GridFunction jm_f = jcg.apply(fm);
    track(c, lp_norm(jm_f, 2.0) <= lp_norm(fm, 2.0) * (1.0 + 1e-9),
          lp_norm(jm_f, 2.0) / lp_norm(fm, 2.0));
    GridFunction resid = jm_f - cplx(1.0 / 16.0, 0.0) * apply_laplacian(jm_f) - fm;
    track(c, lp_norm(resid, 2.0) <= 1e-9 * lp_norm(fm, 2.0),
          lp_norm(resid, 2.0) / (1e-9 * lp_norm(fm, 2.0)));
    out.push_back(c);
  }

  return out;
}

std::vector<CheckResult> verify_norms(std::uint64_t samples, std::uint64_t seed) {
  std::vector<CheckResult> out;
  Rng rng(seed);
  GridPtr grid = build_grid(DomainSpec::box2d(0.0, 1.0, 0.0, 1.0, 1.0 / 33.0, 1.0 / 33.0));
  const std::uint64_t fields = std::min<std::uint64_t>(std::max<std::uint64_t>(samples, 1), 10000);

  {
    CheckResult c;
    c.name = "holder_interpolation";
    c.note = "||v||_{2p'} <= ||v||_2^{1-3/2p} ||v||_6^{3/2p}";
    Rng r = rng.fork(21);
    for (std::uint64_t i = 0; i < fields; ++i) {
      GridFunction v = random_pointwise_field(grid, r);
      for (double p : {2.0, 4.0, 8.0, 16.0}) {
        double theta = 3.0 / (2.0 * p);
        double lhs = lp_norm(v, 2.0 * p / (p - 1.0));
        double rhs = std::pow(lp_norm(v, 2.0), 1.0 - theta) * std::pow(lp_norm(v, 6.0), theta);
        track(c, lhs <= rhs * (1.0 + 1e-12), rhs > 0 ? lhs / rhs : 0.0);
      }
    }
    out.push_back(c);
  }

  {
    CheckResult c;
    c.name = "sqrtp_ratio_stability";
    c.note = "sup ||v||_2p / (sqrt(p)||v||_H1) within 20% across resolutions";
    GridPtr fine = build_grid(DomainSpec::box2d(0.0, 1.0, 0.0, 1.0, 1.0 / 66.0, 1.0 / 66.0));
    auto ensemble_sup = [&](const GridPtr& g, std::uint64_t salt) {
      Rng r = rng.fork(salt);
      double sup = 0.0;
      for (int i = 0; i < 100; ++i) {
        GridFunction v = random_spectral_field(g, r, g->dim() == 2 ? 2.0 : 1.5);
        double h1 = h1_norm(v);
        for (double p : {4.0, 8.0, 16.0, 32.0, 64.0})
          sup = std::max(sup, lp_norm(v, 2.0 * p) / (std::sqrt(p) * h1));
      }
      return sup;
    };
    double coarse_sup = ensemble_sup(grid, 22);
    double fine_sup = ensemble_sup(fine, 22);
    double rel = std::abs(fine_sup - coarse_sup) / coarse_sup;
    c.samples = 200;
    c.violations = rel <= 0.2 ? 0 : 1;
    c.worst = rel / 0.2;
    out.push_back(c);
  }

  {
    CheckResult c;
    c.name = "luxemburg_refinement_scaling";
    c.note = "halving dx changes ||u||_X by O(dx^2): successive diffs shrink >= 3.5x";
    auto lux_at = [&](double dx) {
      GridPtr g = build_grid(DomainSpec::box2d(0.0, 1.0, 0.0, 1.0, dx, dx));
      GridFunction u = sinemode_datum(g, 1, 1, 0.8);
      return luxemburg_norm(u);
    };
    double x0 = lux_at(1.0 / 16.0);
    double x1 = lux_at(1.0 / 32.0);
    double x2 = lux_at(1.0 / 64.0);
    double x3 = lux_at(1.0 / 128.0);
    double r01 = std::abs(x0 - x1) / std::abs(x1 - x2);
    double r12 = std::abs(x1 - x2) / std::abs(x2 - x3);
    bool ok = r01 >= 3.5 && r12 >= 3.5;
    c.samples = 4;
    c.violations = ok ? 0 : 1;
    c.worst = ok ? 3.5 / std::min(r01, r12) : 2.0;
    out.push_back(c);
  }

  {
    CheckResult c;
    c.name = "cutoff_bounds";
    c.note = "0 <= psi_R <= 1 and ||psi_R u||_2 <= ||u||_2";
    Rng r = rng.fork(23);
    for (double R : {0.2, 0.5, 2.0}) {
      GridFunction psi = cutoff_field(grid, R);
      for (const auto& z : psi.v)
        track(c, z.real() >= 0.0 && z.real() <= 1.0 && z.imag() == 0.0, std::abs(z));
      GridFunction u = random_pointwise_field(grid, r);
      double num = lp_norm(multiply(psi, u), 2.0);
      double den = lp_norm(u, 2.0);
      track(c, num <= den * (1.0 + 1e-12), den > 0 ? num / den : 0.0);
    }
    out.push_back(c);
  }

  {
    CheckResult c;
    c.name = "luxemburg_monotonicity";
    Rng r = rng.fork(24);
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(fields, 50); ++i) {
      GridFunction u = random_pointwise_field(grid, r);
      double n1 = luxemburg_norm(u);
      double n2 = luxemburg_norm(cplx(2.0, 0.0) * u);
      double nh = luxemburg_norm(cplx(0.5, 0.0) * u);
      track(c, n2 >= n1 * (1.0 - 1e-9) && nh <= n1 * (1.0 + 1e-9),
            n1 > 0 ? std::max(n1 / n2, nh / n1) : 0.0);
    }
    out.push_back(c);
  }

  return out;
}

}  // namespace nlslab
