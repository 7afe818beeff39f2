#pragma once

namespace nlslab {

// Scalar machinery for the logarithmic nonlinearity g(z) = z log|z|^2, split
// as g = -a + b with a = A/x, b = B/x, B = F + A. A is the convex weight that
// also generates the Orlicz space used by the Luxemburg norm. All functions
// take the radial variable x = |z| >= 0; below 1e-300 they return 0 so the
// removable singularity never produces spurious infinities.

inline constexpr double kLogSplitKnee = 0.049787068367863944;  // e^-3
inline constexpr double kLogSplitKnee2 = kLogSplitKnee * kLogSplitKnee;  // e^-6

double logsplit_F(double x);  // x^2 log x^2
double orlicz_weight_A(double x);
double logsplit_B(double x);
double logsplit_a(double x);  // A(x)/x
double logsplit_b(double x);  // B(x)/x; identically 0 on (0, e^-3]

// truncated radial profiles (m >= 1; ties resolve to the truncated branch)
double logsplit_a_m(double m, double x);  // linear below 1/m
double logsplit_b_m(double m, double x);  // linear above m

// primitives Phi_m = int_0^x a_m, Psi_m = int_0^x b_m (closed form);
// m = +infinity gives the untruncated primitives of a and b
double logsplit_phi(double m, double x);
double logsplit_psi(double m, double x);

// int_0^x s log s^2 ds = x^2/2 log x^2 - x^2/2
double log_profile_primitive(double x);

}  // namespace nlslab
