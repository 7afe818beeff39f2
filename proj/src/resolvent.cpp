#include "resolvent.hpp"

#include <cmath>
#include <stdexcept>

namespace nlslab {

YosidaOperator::YosidaOperator(GridPtr grid, double m,
                               std::optional<ResolventSolver> solver, double cg_tol,
                               int cg_max_iter)
    : grid_(std::move(grid)), m_(m), cg_tol_(cg_tol), cg_max_iter_(cg_max_iter) {
  if (!(m_ > 0.0)) throw std::invalid_argument("YosidaOperator: m must be positive");
  if (!(cg_tol_ <= 1e-10))
    throw std::invalid_argument("YosidaOperator: solver tolerance must be <= 1e-10");
  solver_ = solver.value_or(grid_->full_rectangle() ? ResolventSolver::FastSineTransform
                                                    : ResolventSolver::ConjugateGradient);
  if (solver_ == ResolventSolver::FastSineTransform) {
    if (!grid_->full_rectangle())
      throw std::invalid_argument("FastSineTransform solver needs a full-rectangle mask");
    dst_ = std::make_shared<SineTransform>(grid_);
  }
  if (solver_ == ResolventSolver::DenseDirect && grid_->interior_count() > 4096)
    throw std::invalid_argument("DenseDirect solver limited to 4096 unknowns");
  if (cg_max_iter_ <= 0)
    cg_max_iter_ = static_cast<int>(10 * grid_->interior_count() + 100);
}

GridFunction YosidaOperator::apply(const GridFunction& f) const {
  switch (solver_) {
    case ResolventSolver::FastSineTransform: {
      GridFunction v = f;
      const double m = m_;
      dst_->apply_multiplier(v, [m](double mu) { return 1.0 / (1.0 + mu / m); });
      stats_ = {0, 0.0};
      return v;
    }
    case ResolventSolver::ConjugateGradient: {
      const double m = m_;
      LinearOp op = [m](const GridFunction& x) {
        GridFunction lap = apply_laplacian(x);
        GridFunction y = x;
        axpy(-1.0 / m, lap, y);
        return y;
      };
      return conjugate_gradient(op, f, cg_tol_, cg_max_iter_, &stats_);
    }
    case ResolventSolver::DenseDirect:
      stats_ = {0, 0.0};
      return dense_shifted_solve(f, m_);
  }
  throw std::logic_error("YosidaOperator: bad solver");
}

GridFunction YosidaOperator::apply_tm(const GridFunction& f) const {
  GridFunction jf = apply(f);
  GridFunction out = jf - f;
  return cplx(m_, 0.0) * out;
}

YosidaDifference yosida_difference(const YosidaOperator& opm, const YosidaOperator& opn,
                                   const GridFunction& v) {
  YosidaDifference out;
  GridFunction diff = opm.apply(v) - opn.apply(v);
  out.dist = lp_norm(diff, 2.0);
  double h1 = h1_norm(v);
  out.bound = std::sqrt(2.0) * (1.0 / std::sqrt(opm.m()) + 1.0 / std::sqrt(opn.m())) * h1;
  out.tm_norm = lp_norm(opm.apply_tm(v), 2.0);
  out.tm_bound = std::sqrt(2.0 * opm.m()) * h1;
  return out;
}

CutoffSplitReport cutoff_split_check(const GridFunction& u, double lambda, double r,
                                     double q) {
  CutoffSplitReport rep;
  rep.r = r;
  rep.q = q;
  auto fam = NonlinearityFamily::power(lambda, 2.0);
  GridFunction g1(u.grid), g2(u.grid);
  for (std::size_t i = 0; i < u.v.size(); ++i) {
    cplx g = eval_g(fam, u.v[i]);
    double theta = cutoff_profile(std::abs(u.v[i]));
    g1.v[i] = theta * g;
    g2.v[i] = (1.0 - theta) * g;
  }
  rep.g1_h1 = h1_norm(g1);
  rep.g2_w1r = w1r_norm(g2, r);
  double u_h1 = h1_norm(u);
  double u_lq = lp_norm(u, q);
  rep.ratio_g1 = u_h1 > 0.0 ? rep.g1_h1 / u_h1 : 0.0;
  double denom = u_lq * u_lq * u_h1;
  rep.ratio_g2 = denom > 0.0 ? rep.g2_w1r / denom : 0.0;
  return rep;
}

}  // namespace nlslab
