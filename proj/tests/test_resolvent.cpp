#include <doctest.h>

#include <cmath>

#include "convergence.hpp"
#include "initial_data.hpp"
#include "oracles.hpp"
#include "resolvent.hpp"
#include "rng.hpp"

using namespace nlslab;

TEST_CASE("yosida on zero input") {
  auto g = build_grid(DomainSpec::box1d(0.0, M_PI, M_PI / 16.0));
  YosidaOperator jm(g, 5.0);
  GridFunction zero(g);
  CHECK(lp_norm(jm.apply(zero), 2.0) == 0.0);
}

TEST_CASE("yosida maps sine modes to scaled sine modes") {
  auto g = build_grid(DomainSpec::box1d(0.0, M_PI, M_PI / 32.0));
  double dx = g->dx(0);
  for (int k : {1, 3, 7}) {
    GridFunction sk = sinemode_datum(g, k, 1, 1.0);
    for (double m : {1.0, 8.0, 100.0}) {
      double mu = 4.0 / (dx * dx) * std::pow(std::sin(0.5 * k * dx), 2);
      double factor = 1.0 / (1.0 + mu / m);
      for (auto solver :
           {ResolventSolver::FastSineTransform, ResolventSolver::DenseDirect}) {
        YosidaOperator jm(g, m, solver);
        GridFunction v = jm.apply(sk);
        for (std::int64_t i = 0; i < g->interior_count(); ++i)
          CHECK(v.v[i].real() ==
                doctest::Approx(factor * sk.v[i].real()).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("yosida difference on the fundamental sine mode") {
  auto g = build_grid(DomainSpec::box1d(0.0, M_PI, M_PI / 512.0));
  GridFunction v = sinemode_datum(g, 1, 1, 1.0);
  double dx = g->dx(0);
  double mu = 4.0 / (dx * dx) * std::pow(std::sin(0.5 * dx), 2);

  YosidaOperator j1(g, 1.0), j4(g, 4.0);
  auto diff = yosida_difference(j1, j4, v);

  double l2 = lp_norm(v, 2.0);
  double expected = std::abs(1.0 / (1.0 + mu) - 1.0 / (1.0 + mu / 4.0)) * l2;
  CHECK(diff.dist == doctest::Approx(expected).epsilon(1e-11));
  // continuum values: dist = 0.3 sqrt(pi/2), bound = sqrt(2) * 1.5 * sqrt(pi)
  CHECK(diff.dist == doctest::Approx(0.3 * std::sqrt(M_PI / 2.0)).epsilon(1e-3));
  CHECK(diff.bound == doctest::Approx(std::sqrt(2.0) * 1.5 * std::sqrt(M_PI)).epsilon(1e-3));
  CHECK(diff.dist <= diff.bound);

  auto same = yosida_difference(j4, j4, v);
  CHECK(same.dist == 0.0);
}

TEST_CASE("yosida contraction, self-adjointness and Tm identity (CG, masked grid)") {
  DomainSpec spec = DomainSpec::box2d(0.0, 1.0, 0.0, 1.0, 1.0 / 12.0, 1.0 / 12.0);
  spec.mask.assign(13 * 13, 1);
  for (int ix = 5; ix <= 7; ++ix) spec.mask[6 * 13 + ix] = 0;  // slit
  auto g = build_grid(spec);
  REQUIRE_FALSE(g->full_rectangle());

  Rng rng(77);
  GridFunction f(g), h(g);
  for (auto& z : f.v) z = rng.complex_normal();
  for (auto& z : h.v) z = rng.complex_normal();

  for (double m : {2.0, 40.0}) {
    YosidaOperator jm(g, m);
    CHECK(jm.solver() == ResolventSolver::ConjugateGradient);
    GridFunction jf = jm.apply(f);
    CHECK(lp_norm(jf, 2.0) <= lp_norm(f, 2.0) * (1.0 + 1e-10));
    CHECK(h1_norm(jf) <= h1_norm(f) * (1.0 + 1e-10));
    CHECK(std::abs(inner(jf, h) - inner(f, jm.apply(h))) <=
          1e-10 * lp_norm(f, 2.0) * lp_norm(h, 2.0));
    GridFunction lhs = apply_laplacian(jf);
    GridFunction rhs = cplx(m, 0.0) * (jf - f);
    CHECK(lp_norm(lhs - rhs, 2.0) <= 1e-7 * std::max(1.0, lp_norm(rhs, 2.0)));
    // dense direct agrees
    YosidaOperator dd(g, m, ResolventSolver::DenseDirect);
    CHECK(lp_norm(jf - dd.apply(f), 2.0) <= 1e-9 * lp_norm(f, 2.0));
  }
}

TEST_CASE("yosida m -> infinity recovers the identity at rate 1/m") {
  auto g = build_grid(DomainSpec::box1d(0.0, M_PI, M_PI / 128.0));
  GridFunction f = sinemode_datum(g, 1, 1, 1.0);
  std::vector<double> ms{10.0, 100.0, 1000.0, 10000.0}, ds;
  for (double m : ms) {
    YosidaOperator jm(g, m);
    ds.push_back(lp_norm(jm.apply(f) - f, 2.0));
  }
  RateFit fit = fit_rate(ms, ds);
  CHECK(std::abs(fit.exponent + 1.0) <= 0.15);
}

TEST_CASE("cg failure carries the residual history") {
  auto g = build_grid(DomainSpec::box2d(0.0, 1.0, 0.0, 1.0, 0.05, 0.05));
  Rng rng(4);
  GridFunction f(g);
  for (auto& z : f.v) z = rng.complex_normal();
  LinearOp op = [](const GridFunction& x) {
    GridFunction y = x;
    axpy(-1e-4, apply_laplacian(x), y);
    return y;
  };
  try {
    conjugate_gradient(op, f, 1e-14, 2);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.residual_history.size() == 3);
    CHECK(e.residual_history.front() == doctest::Approx(1.0));
  }
}

TEST_CASE("yosida rejects loose tolerances and bad m") {
  auto g = build_grid(DomainSpec::box1d(0.0, 1.0, 0.1));
  CHECK_THROWS_AS(YosidaOperator(g, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(YosidaOperator(g, 1.0, ResolventSolver::ConjugateGradient, 1e-6),
                  std::invalid_argument);
}

TEST_CASE("cutoff split: trivial and small-amplitude cases") {
  auto g = build_grid(DomainSpec::box2d(0.0, 1.0, 0.0, 1.0, 1.0 / 16.0, 1.0 / 16.0));
  GridFunction zero(g);
  auto rep0 = cutoff_split_check(zero);
  CHECK(rep0.ratio_g1 == 0.0);
  CHECK(rep0.ratio_g2 == 0.0);

  GridFunction small = gaussian_datum(g, {0.5, 0.5}, 0.2, 0.9);
  auto rep1 = cutoff_split_check(small);
  CHECK(rep1.g2_w1r == 0.0);  // theta = 1 on the unit disk
  CHECK(rep1.ratio_g1 > 0.0);
}

TEST_CASE("cutoff split ratios are bounded and refinement-stable") {
  auto ensemble_max = [&](double dx) {
    auto g = build_grid(DomainSpec::box2d(0.0, 1.0, 0.0, 1.0, dx, dx));
    Rng rng(99);
    double worst1 = 0.0, worst2 = 0.0;
    for (int i = 0; i < 100; ++i) {
      GridFunction u = random_spectral_field(g, rng, 2.0);
      double h1 = h1_norm(u);
      u = cplx(3.0 / h1, 0.0) * u;  // amplitudes straddle the theta window
      auto rep = cutoff_split_check(u);
      worst1 = std::max(worst1, rep.ratio_g1);
      worst2 = std::max(worst2, rep.ratio_g2);
    }
    return std::pair<double, double>(worst1, worst2);
  };
  auto [c1, c2] = ensemble_max(1.0 / 24.0);
  auto [f1, f2] = ensemble_max(1.0 / 48.0);
  CHECK(std::isfinite(c1));
  CHECK(std::isfinite(c2));
  CHECK(std::abs(f1 - c1) <= 0.2 * c1);
  CHECK(std::abs(f2 - c2) <= 0.2 * c2);
}
