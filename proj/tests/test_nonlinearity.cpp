#include <doctest.h>

#include <cmath>

#include "frozen_constants.hpp"
#include "logsplit.hpp"
#include "nonlinearity.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using namespace nlslab;

TEST_CASE("eval_g on the three families") {
  auto pw = NonlinearityFamily::power(1.0, 2.0);
  CHECK(eval_g(pw, cplx(2.0, 0.0)) == cplx(8.0, 0.0));

  auto lg = NonlinearityFamily::logarithmic();
  CHECK(eval_g(lg, cplx(0.0, 0.0)) == cplx(0.0, 0.0));
  CHECK(eval_g(lg, cplx(1.0, 0.0)) == cplx(0.0, 0.0));  // log 1 = 0

  auto dp = NonlinearityFamily::damping(0.5);
  CHECK(eval_g(dp, cplx(4.0, 0.0)).real() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("eval_g_trunc hand values") {
  auto pw = NonlinearityFamily::power(1.0, 2.0);
  CHECK(eval_g_trunc(pw, 2.0, cplx(3.0, 0.0)).real() == doctest::Approx(12.0));

  auto dp = NonlinearityFamily::damping(0.5);
  // below 1/m the profile is linear with slope m^alpha
  CHECK(eval_g_trunc(dp, 4.0, cplx(0.1, 0.0)).real() == doctest::Approx(0.2));

  // log small-amplitude branch: a_m(z) = 2 z log m once 1/m < e^-3
  double m = std::exp(4.0);
  cplx z(1e-5, 2e-5);
  LogPair pair = eval_log_pair(m, z);
  CHECK(std::abs(pair.a - 8.0 * z) <= 1e-12 * std::abs(pair.a));
  CHECK(pair.b == cplx(0.0, 0.0));  // b vanishes below e^-3
}

TEST_CASE("gauge equivariance across families") {
  Rng rng(17);
  const NonlinearityFamily fams[] = {
      NonlinearityFamily::power(-1.0, 1.3), NonlinearityFamily::logarithmic(),
      NonlinearityFamily::damping(0.3),
      NonlinearityFamily::power_plus_damping(2.0, 2.0, 0.7)};
  for (int it = 0; it < 2000; ++it) {
    cplx z = rng.log_uniform_complex(1e-8, 1e4);
    double th = rng.uniform(0.0, 6.28318);
    for (const auto& fam : fams) {
      cplx lhs = eval_g(fam, std::polar(1.0, th) * z);
      cplx rhs = std::polar(1.0, th) * eval_g(fam, z);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1e-30, std::abs(rhs)));
    }
  }
}

TEST_CASE("log split scalar identities") {
  double e3 = kLogSplitKnee;
  // A continuous at the knee with value 6 e^-6
  CHECK(orlicz_weight_A(e3) == doctest::Approx(6.0 * kLogSplitKnee2).epsilon(1e-12));
  CHECK(orlicz_weight_A(e3 * (1.0 - 1e-9)) ==
        doctest::Approx(orlicz_weight_A(e3 * (1.0 + 1e-9))).epsilon(1e-6));
  CHECK(logsplit_b(0.5 * e3) == 0.0);

  // -a + b recovers z log|z|^2
  Rng rng(5);
  for (int it = 0; it < 2000; ++it) {
    double x = rng.log_uniform(1e-10, 1e5);
    double combined = -logsplit_a(x) + logsplit_b(x);
    CHECK(combined == doctest::Approx(2.0 * x * std::log(x)).epsilon(1e-10));
  }
  // A stays nonnegative
  for (int it = 0; it < 2000; ++it)
    CHECK(orlicz_weight_A(rng.log_uniform(1e-12, 1e6)) >= 0.0);
}

TEST_CASE("antiderivative closed forms") {
  auto pw = NonlinearityFamily::power(1.0, 2.0);
  CHECK(antiderivative(pw, kUntruncated, 2.0) == doctest::Approx(4.0));
  CHECK(antiderivative(pw, 2.0, 3.0) == doctest::Approx(14.0));
  CHECK_THROWS_AS(antiderivative(pw, 2.0, -1.0), std::invalid_argument);
}

TEST_CASE("antiderivatives agree with adaptive quadrature") {
  auto pw = NonlinearityFamily::power(0.7, 1.4);
  auto dp = NonlinearityFamily::damping(0.35);
  for (double m : {3.0, kUntruncated}) {
    for (double rho : {0.02, 0.5, 2.5, 7.0}) {
      double expect_pw = oracle::integrate(
          [&](double s) { return power_profile(0.7, 1.4, m, s); }, 0.0, rho);
      CHECK(antiderivative(pw, m, rho) == doctest::Approx(expect_pw).epsilon(1e-10));
      double expect_dp = oracle::integrate(
          [&](double s) { return damping_profile(0.35, m, s); }, 0.0, rho);
      CHECK(antiderivative(dp, m, rho) == doctest::Approx(expect_dp).epsilon(1e-10));
    }
  }
  // log-split primitives across both thresholds, including the knee
  for (double m : {40.0, 1000.0}) {
    for (double rho : {1.0 / 80.0, kLogSplitKnee, 0.3, 5.0}) {
      double phi = oracle::integrate([&](double s) { return logsplit_a_m(m, s); }, 0.0, rho,
                                     1e-14);
      CHECK(logsplit_phi(m, rho) == doctest::Approx(phi).epsilon(1e-10));
      double psi = oracle::integrate([&](double s) { return logsplit_b_m(m, s); }, 0.0, rho,
                                     1e-14);
      CHECK(logsplit_psi(m, rho) == doctest::Approx(psi).epsilon(1e-9));
    }
  }
}

TEST_CASE("antiderivative derivative equals the profile") {
  auto fams = {NonlinearityFamily::power(1.0, 2.0), NonlinearityFamily::damping(0.5),
               NonlinearityFamily::logarithmic()};
  const double m = 8.0;
  for (const auto& fam : fams) {
    for (double rho : {0.05, 0.4, 1.7, 6.0, 12.0}) {
      // keep clear of the truncation thresholds and the knee
      double h = 1e-6 * std::max(rho, 1.0);
      double fd =
          (antiderivative(fam, m, rho + h) - antiderivative(fam, m, rho - h)) / (2.0 * h);
      double profile;
      switch (fam.kind) {
        case FamilyKind::PowerLocal: profile = power_profile(1.0, 2.0, m, rho); break;
        case FamilyKind::Damping: profile = damping_profile(0.5, m, rho); break;
        default: profile = log_profile(m, rho); break;
      }
      CHECK(fd == doctest::Approx(profile).epsilon(1e-6));
    }
  }
}

TEST_CASE("inequality oracle hand examples") {
  auto log34 = inequality_oracle(InequalityKind::Log34, cplx(1, 0), cplx(0, 1), {});
  CHECK(log34.lhs == doctest::Approx(0.0));
  CHECK(log34.rhs == doctest::Approx(4.0));
  CHECK(log34.holds);

  auto log34b = inequality_oracle(InequalityKind::Log34, cplx(0, 2), cplx(1, 0), {});
  CHECK(log34b.lhs == doctest::Approx(2.0 * std::log(4.0)).epsilon(1e-12));
  CHECK(log34b.rhs == doctest::Approx(10.0));
  CHECK(log34b.holds);

  OracleParams mono;
  mono.monotone_family = NonlinearityFamily::damping(0.5);
  mono.m = kUntruncated;
  auto m42 = inequality_oracle(InequalityKind::Monotone42, cplx(1, 0), cplx(-1, 0), mono);
  CHECK(m42.lhs == doctest::Approx(4.0));
  CHECK(m42.holds);

  auto same = inequality_oracle(InequalityKind::Log34, cplx(2, 3), cplx(2, 3), {});
  CHECK(same.lhs == 0.0);
  CHECK(same.rhs == 0.0);
  CHECK(same.holds);
}

TEST_CASE("truncation residual rates pointwise") {
  Rng rng(23);
  auto pw = NonlinearityFamily::power(1.0, 2.0);
  auto dp = NonlinearityFamily::damping(0.5);
  for (int it = 0; it < 5000; ++it) {
    double K = rng.log_uniform(0.01, 50.0);
    cplx z = std::polar(rng.uniform(0.0, K), rng.uniform(0.0, 6.28318));
    // power: exact agreement once m >= |z|
    CHECK(eval_g_trunc(pw, std::ceil(K), z) == eval_g(pw, z));
    // damping: pointwise gap bounded by 2 m^(alpha-1)
    double m = std::floor(rng.log_uniform(1.0, 4096.0));
    CHECK(std::abs(eval_g_trunc(dp, m, z) - eval_g(dp, z)) <=
          2.0 * std::pow(m, -0.5) * (1.0 + 1e-12));
    // log a-part gap bounded by 4 log(m)/m (for 1/m below the knee)
    double ml = std::floor(rng.log_uniform(32.0, 32768.0));
    LogPair t = eval_log_pair(ml, z);
    LogPair f = eval_log_pair(kUntruncated, z);
    CHECK(std::abs(t.a - f.a) <= 4.0 * std::log(ml) / ml * (1.0 + 1e-12));
    CHECK(std::abs(t.b - f.b) <= std::abs(f.b) + std::abs(t.b));
  }
}

TEST_CASE("frozen constants cover a fresh estimate") {
  const FrozenConstants& frozen = frozen_constants();
  FrozenConstants est = estimate_constants(987654321ULL, 200000ULL);
  CHECK(frozen.lip24_c >= est.lip24_c);
  CHECK(frozen.log35a_c >= est.log35a_c);
  CHECK(frozen.log35b_c >= est.log35b_c);
  CHECK(frozen.holder_damp_c >= est.holder_damp_c);
  // and are not absurdly loose
  CHECK(frozen.lip24_c <= 1.5 * est.lip24_c);
  CHECK(frozen.log35a_c <= 1.5 * est.log35a_c);
  CHECK(frozen.log35b_c <= 1.5 * est.log35b_c);
  CHECK(frozen.holder_damp_c <= 1.5 * est.holder_damp_c);
}

TEST_CASE("constants file parser") {
  auto c = parse_constants_text("# comment\nlip24_c = 1.5\nlog35a_c=2\nlog35b_c = 2\n"
                                "holder_damp_c = 2.5 # trailing\n");
  CHECK(c.lip24_c == 1.5);
  CHECK(c.holder_damp_c == 2.5);
  CHECK_THROWS(parse_constants_text("lip24_c = 1.5\n"));
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(NonlinearityFamily::damping(1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(NonlinearityFamily::damping(0.0).validate(), std::invalid_argument);
  auto hot = NonlinearityFamily::power(1.0, 3.0);
  CHECK_THROWS_AS(hot.validate(), std::invalid_argument);
  hot.sigma_override = true;
  CHECK_NOTHROW(hot.validate());
}
