#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grid.hpp"
#include "nonlinearity.hpp"
#include "resolvent.hpp"

namespace nlslab {

enum class SchemeKind {
  TruncatedDirect,    // i u_t + Lap u + g_m(u) = 0, g truncated at |u| = m
  YosidaRegularized,  // i u_t + Lap u + J_m g(J_m u) = 0
  LogSplitScheme,     // i u_t + Lap u + (-a_m + b_m)(u) = 0
  DampedTruncated,    // i u_t + Lap u + i g_m(u) = 0, g = u/|u|^alpha
  PowerPlusDamping,   // i u_t + Lap u + g_m(u) + i h_m(u) = 0
};

std::string scheme_name(SchemeKind kind);
SchemeKind scheme_from_name(const std::string& name);

enum class LinearSubstep { SpectralExact, CrankNicolson };

struct SchemeConfig {
  SchemeKind scheme = SchemeKind::TruncatedDirect;
  NonlinearityFamily family;
  double m = 16.0;  // truncation level; kUntruncated for reference runs
  double dt = 1e-3;
  double t_final = 1.0;
  LinearSubstep linear = LinearSubstep::SpectralExact;
  double cn_tol = 1e-12;
  int snapshot_stride = 0;    // 0 = keep only the final state
  int diagnostic_stride = 1;  // record diagnostics every k-th step

  void validate(const Grid& grid) const;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> mass;      // M(u) = ||u||_2^2
  std::vector<double> h1;        // ||u||_H1
  std::vector<double> energy;    // untruncated energy E(u)
  std::vector<double> energy_m;  // the scheme's own conserved E_m(u)
  std::vector<double> linf;
  std::vector<double> luxemburg;  // only filled for the logarithmic family

  std::vector<double> snapshot_times;
  std::vector<GridFunction> snapshots;
  GridFunction final_state;
  double t_final = 0.0;

  bool aborted = false;  // NaN/overflow; final_state holds the last good state
  double abort_time = 0.0;
};

// exact linear propagator U(tau) = exp(i tau Lap); tau may be negative
GridFunction linear_substep(const GridFunction& u, double tau, LinearSubstep kind,
                            const SineTransform* dst, double cn_tol = 1e-12);

// exact pointwise nonlinear flow over time tau (RK4 for YosidaRegularized,
// which has no pointwise form; pass its resolvent)
GridFunction nonlinear_substep(SchemeKind scheme, const NonlinearityFamily& family,
                               double m, const GridFunction& u, double tau,
                               const YosidaOperator* jm = nullptr);

// scalar building blocks, exposed for oracle tests
double damped_modulus_flow(double alpha, double m, double rho0, double tau);
// phase accumulated by the power part while the modulus follows the damping
// flow (PowerPlusDamping nonlinear substep)
double damped_phase_advance(const NonlinearityFamily& family, double m, double rho0,
                            double tau);

TrajectoryRecord evolve(const SchemeConfig& config, const GridFunction& phi);

// E_m(u) from the closed-form primitives; m = kUntruncated gives E(u)
// (for the logarithmic family that is the section-3 energy
//  1/2 |grad u|^2 - 1/2 int |u|^2 log |u|^2).
double energy(const NonlinearityFamily& family, double m, const GridFunction& u);
// E_m for the Yosida scheme: G_m(u) = G(J_m u)
double yosida_energy(const NonlinearityFamily& family, const YosidaOperator& jm,
                     const GridFunction& u);

}  // namespace nlslab
