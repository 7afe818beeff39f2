#include "logsplit.hpp"

#include <cmath>
#include <limits>

namespace nlslab {

namespace {
constexpr double kTiny = 1e-300;
constexpr double kE3 = kLogSplitKnee;
constexpr double kE6 = kLogSplitKnee2;

// branch primitives, each vanishing appropriately at its lower end.
// log(x) forms instead of log(x^2): x*x underflows to 0 for x < 1e-154 and
// 0 * inf would poison the small-amplitude branch with NaNs.
double prim_a_small(double s) {  // int -s log s^2
  if (s < kTiny) return 0.0;
  return s * s * (0.5 - std::log(s));
}
double prim_a_large(double s) {  // int 3s + 4e^-3 - e^-6/s
  return 1.5 * s * s + 4.0 * kE3 * s - kE6 * std::log(s);
}
double prim_b_large(double s) {  // int s log s^2 + 3s + 4e^-3 - e^-6/s
  return s * s * std::log(s) + s * s + 4.0 * kE3 * s - kE6 * std::log(s);
}

double phi_untrunc(double x) {
  if (x <= kE3) return prim_a_small(x);
  return prim_a_small(kE3) + prim_a_large(x) - prim_a_large(kE3);
}

double psi_untrunc(double x) {
  if (x <= kE3) return 0.0;
  return prim_b_large(x) - prim_b_large(kE3);
}
}  // namespace

double logsplit_F(double x) {
  if (x < kTiny) return 0.0;
  return 2.0 * x * x * std::log(x);
}

double orlicz_weight_A(double x) {
  if (x < kTiny) return 0.0;
  if (x <= kE3) return -2.0 * x * x * std::log(x);
  return 3.0 * x * x + 4.0 * kE3 * x - kE6;
}

double logsplit_B(double x) { return logsplit_F(x) + orlicz_weight_A(x); }

double logsplit_a(double x) {
  if (x < kTiny) return 0.0;
  if (x <= kE3) return -2.0 * x * std::log(x);
  return 3.0 * x + 4.0 * kE3 - kE6 / x;
}

double logsplit_b(double x) {
  if (x <= kE3) return 0.0;
  return 2.0 * x * std::log(x) + 3.0 * x + 4.0 * kE3 - kE6 / x;
}

double logsplit_a_m(double m, double x) {
  if (x < kTiny) return 0.0;
  if (std::isinf(m)) return logsplit_a(x);
  double t = 1.0 / m;
  if (x <= t) return m * x * logsplit_a(t);
  return logsplit_a(x);
}

double logsplit_b_m(double m, double x) {
  if (x < kTiny) return 0.0;
  if (std::isinf(m)) return logsplit_b(x);
  if (x >= m) return (x / m) * logsplit_b(m);
  return logsplit_b(x);
}

double logsplit_phi(double m, double x) {
  if (x < kTiny) return 0.0;
  if (std::isinf(m)) return phi_untrunc(x);
  double t = 1.0 / m;
  double slope = m * logsplit_a(t);  // a_m is slope*x below t
  if (x <= t) return 0.5 * slope * x * x;
  return 0.5 * slope * t * t + phi_untrunc(x) - phi_untrunc(t);
}

double logsplit_psi(double m, double x) {
  if (x < kTiny) return 0.0;
  if (std::isinf(m) || x <= m) return psi_untrunc(x);
  return psi_untrunc(m) + 0.5 * (logsplit_b(m) / m) * (x * x - m * m);
}

double log_profile_primitive(double x) {
  if (x < kTiny) return 0.0;
  return x * x * std::log(x) - 0.5 * x * x;
}

}  // namespace nlslab
