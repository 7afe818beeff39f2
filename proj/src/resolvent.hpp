#pragma once

#include <memory>
#include <optional>

#include "grid.hpp"
#include "linear_solvers.hpp"
#include "nonlinearity.hpp"
#include "sine_transform.hpp"

namespace nlslab {

enum class ResolventSolver { FastSineTransform, ConjugateGradient, DenseDirect };

// J_m = (I - Lap/m)^{-1} on the discrete Dirichlet Laplacian. Immutable and
// shareable; applications are pure.
class YosidaOperator {
 public:
  // solver defaults to FST on full-rectangle masks and CG otherwise
  YosidaOperator(GridPtr grid, double m,
                 std::optional<ResolventSolver> solver = std::nullopt,
                 double cg_tol = 1e-12, int cg_max_iter = 0);

  GridFunction apply(const GridFunction& f) const;  // J_m f
  // T_m f = Lap J_m f, computed through the identity T_m = m (J_m - I)
  GridFunction apply_tm(const GridFunction& f) const;

  double m() const { return m_; }
  ResolventSolver solver() const { return solver_; }
  SolveStats last_stats() const { return stats_; }

 private:
  GridPtr grid_;
  double m_;
  ResolventSolver solver_;
  double cg_tol_;
  int cg_max_iter_;
  std::shared_ptr<const SineTransform> dst_;
  mutable SolveStats stats_{};
};

struct YosidaDifference {
  double dist = 0.0;      // ||J_m v - J_n v||_2
  double bound = 0.0;     // sqrt(2) (m^-1/2 + n^-1/2) ||v||_H1
  double tm_norm = 0.0;   // ||T_m v||_2
  double tm_bound = 0.0;  // sqrt(2m) ||v||_H1
};

YosidaDifference yosida_difference(const YosidaOperator& opm, const YosidaOperator& opn,
                                   const GridFunction& v);

// Cutoff split g = g1 + g2 for the cubic family: theta is the quintic taper
// in |u|, g1 = theta(u) g(u) carries the small amplitudes, g2 the rest.
struct CutoffSplitReport {
  double ratio_g1 = 0.0;  // ||g1(u)||_H1 / ||u||_H1
  double ratio_g2 = 0.0;  // ||g2(u)||_W1r / (||u||_Lq^2 ||u||_H1)
  double g1_h1 = 0.0;
  double g2_w1r = 0.0;
  double r = 4.0 / 3.0;
  double q = 8.0;
};

CutoffSplitReport cutoff_split_check(const GridFunction& u, double lambda = 1.0,
                                     double r = 4.0 / 3.0, double q = 8.0);

}  // namespace nlslab
