#pragma once

// Test-only oracles, kept independent of the implementation paths they check:
// adaptive quadrature for antiderivatives, a dense spectral propagator, and a
// high-order adaptive ODE integrator for the damping flows.

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <functional>
#include <vector>

#include "grid.hpp"
#include "linear_solvers.hpp"

namespace oracle {

// adaptive Simpson on [a,b]
inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fm, double fb, double whole, double tol,
                          int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 60);
}

// exact dense propagator exp(i tau Lap) u via the spectral decomposition of
// the assembled stencil (usable up to ~4096 unknowns)
inline nlslab::GridFunction dense_expm(const nlslab::GridFunction& u, double tau) {
  auto eig = nlslab::dense_laplacian_eigen(u.grid);  // -Lap = V diag(mu) V^T
  const std::int64_t n = eig.n;
  std::vector<nlslab::cplx> coeff(n, 0.0);
  for (std::int64_t k = 0; k < n; ++k) {
    nlslab::cplx c = 0.0;
    for (std::int64_t i = 0; i < n; ++i) c += eig.vectors[k * n + i] * u.v[i];
    coeff[k] = c * std::polar(1.0, -eig.eigenvalues[k] * tau);
  }
  nlslab::GridFunction out(u.grid);
  for (std::int64_t i = 0; i < n; ++i) {
    nlslab::cplx acc = 0.0;
    for (std::int64_t k = 0; k < n; ++k) acc += eig.vectors[k * n + i] * coeff[k];
    out.v[i] = acc;
  }
  return out;
}

// adaptive dopri5 for the scalar modulus ODE rho' = -r(rho)
inline double ode_modulus_flow(const std::function<double(double)>& profile, double rho0,
                               double tau, double tol = 1e-12) {
  namespace od = boost::numeric::odeint;
  std::vector<double> state{rho0};
  auto rhs = [&](const std::vector<double>& x, std::vector<double>& dxdt, double) {
    dxdt[0] = x[0] > 0.0 ? -profile(x[0]) : 0.0;
  };
  od::integrate_adaptive(
      od::make_controlled<od::runge_kutta_dopri5<std::vector<double>>>(tol, tol), rhs,
      state, 0.0, tau, tau / 1024.0);
  return state[0];
}

// adaptive dopri5 for the full complex pointwise flow z' = f(z)
inline nlslab::cplx ode_complex_flow(
    const std::function<nlslab::cplx(nlslab::cplx)>& rhs_fn, nlslab::cplx z0, double tau,
    double tol = 1e-12) {
  namespace od = boost::numeric::odeint;
  std::vector<double> state{z0.real(), z0.imag()};
  auto rhs = [&](const std::vector<double>& x, std::vector<double>& dxdt, double) {
    nlslab::cplx z(x[0], x[1]);
    nlslab::cplx d = rhs_fn(z);
    dxdt[0] = d.real();
    dxdt[1] = d.imag();
  };
  od::integrate_adaptive(
      od::make_controlled<od::runge_kutta_dopri5<std::vector<double>>>(tol, tol), rhs,
      state, 0.0, tau, tau / 1024.0);
  return {state[0], state[1]};
}

}  // namespace oracle
