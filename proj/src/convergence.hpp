#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evolution.hpp"
#include "grid.hpp"

namespace nlslab {

struct FamilyRunResult {
  std::vector<double> ms;
  // one slot per member; empty optional means that run failed
  std::vector<std::optional<TrajectoryRecord>> records;
  std::vector<std::string> errors;  // aligned with ms; empty string = ok
  bool ok = true;
};

// Runs the same scheme/grid/datum across truncation levels. Members execute
// in parallel; results are folded in m order so output is deterministic.
FamilyRunResult run_family(const SchemeConfig& base, const GridFunction& phi,
                           const std::vector<double>& ms, int workers = 1);

// Entry (i,j) = max over the common snapshot times of ||u_i(t) - u_j(t)||_2,
// optionally localized by the cutoff psi_R. Requires aligned time grids.
std::vector<std::vector<double>> cauchy_distances(
    const std::vector<const TrajectoryRecord*>& records,
    std::optional<double> localization_R = std::nullopt);

struct RateFit {
  double exponent = 0.0;   // distance ~ m^exponent
  double intercept = 0.0;  // log-space intercept
  double fit_residual = 0.0;
};

// least squares on (log m, log d); needs >= 3 strictly positive distances
RateFit fit_rate(const std::vector<double>& ms, const std::vector<double>& distances);

struct TruncationResidual {
  double total = 0.0;   // ||g_m(u) - g(u)||_2 (a-part for the log family)
  double b_part = 0.0;  // log family only: ||b_m(u) - b(u)||_2
};
TruncationResidual truncation_residual(const NonlinearityFamily& family, double m,
                                       const GridFunction& u);

// analytic Cauchy envelope of the damped scheme:
// sup_t ||u_m - u_n||_2^2 <= 8 T |Omega|^(1/2) ||phi||_2 (m^-(1-a) + n^-(1-a))
double damped_cauchy_bound(double t_final, double domain_measure, double phi_l2,
                           double alpha, double m, double n);

struct YudovichRow {
  double p = 0.0;
  double dist_2pprime = 0.0;        // ||u-v||_{L^{2p'}}
  double interpolation_bound = 0.0; // ||u-v||_2^{1-3/(2p)} ||u-v||_6^{3/(2p)}
  double sqrtp_ratio = 0.0;         // ||v||_{2p} / (sqrt(p) ||v||_H1)
  double envelope = 0.0;            // p * d^{2(1-3/(2p))} for the L2 distance d
};

struct YudovichReport {
  std::vector<YudovichRow> rows;
  double best_p = 0.0;  // argmin of the envelope
  double l2_distance = 0.0;
};

YudovichReport yudovich_probe(const GridFunction& u, const GridFunction& v,
                              const std::vector<double>& ps);

struct DependenceRow {
  double scale = 0.0;
  double sup_l2 = 0.0;
  double sup_h1 = 0.0;
};

struct DependenceReport {
  std::vector<DependenceRow> rows;  // ordered by decreasing scale
  bool monotone = true;             // distances shrink with the scale
  double gronwall_c = 0.0;          // fitted growth rate of log d(t) (largest scale)
};

DependenceReport dependence_probe(const SchemeConfig& config, const GridFunction& phi,
                                  const GridFunction& dphi,
                                  const std::vector<double>& scales, int workers = 1);

}  // namespace nlslab
