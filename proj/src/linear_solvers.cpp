#include "linear_solvers.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace nlslab {

GridFunction conjugate_gradient(const LinearOp& apply, const GridFunction& rhs,
                                double tol, int max_iter, SolveStats* stats) {
  GridFunction x(rhs.grid);  // zero initial guess
  GridFunction r = rhs;
  GridFunction p = r;
  double rhs_norm = std::sqrt(std::real(inner(rhs, rhs)));
  if (rhs_norm == 0.0) {
    if (stats) *stats = {0, 0.0};
    return x;
  }
  double rr = std::real(inner(r, r));
  std::vector<double> history;
  history.push_back(std::sqrt(rr) / rhs_norm);
  for (int it = 1; it <= max_iter; ++it) {
    GridFunction ap = apply(p);
    double pap = std::real(inner(ap, p));
    double alpha = rr / pap;
    axpy(alpha, p, x);
    axpy(-alpha, ap, r);
    double rr_new = std::real(inner(r, r));
    double rel = std::sqrt(rr_new) / rhs_norm;
    history.push_back(rel);
    if (rel <= tol) {
      if (stats) *stats = {it, rel};
      return x;
    }
    double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < p.v.size(); ++i) p.v[i] = r.v[i] + beta * p.v[i];
  }
  throw SolverError("conjugate gradient did not reach tolerance", std::move(history));
}

namespace {
Eigen::MatrixXd assemble_neg_laplacian(const Grid& g) {
  const std::int64_t n = g.interior_count();
  if (n > 4096) throw std::invalid_argument("dense path limited to 4096 unknowns");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  const double wx = 1.0 / (g.dx(0) * g.dx(0));
  const double wy = g.dim() == 2 ? 1.0 / (g.dx(1) * g.dx(1)) : 0.0;
  for (std::int32_t i = 0; i < n; ++i) {
    A(i, i) = 2.0 * wx + (g.dim() == 2 ? 2.0 * wy : 0.0);
    for (int d = 0; d < 2 * g.dim(); ++d) {
      std::int32_t nb = g.neighbor(i, d);
      if (nb >= 0) A(i, nb) -= d < 2 ? wx : wy;
    }
  }
  return A;
}
}  // namespace

GridFunction dense_shifted_solve(const GridFunction& rhs, double m) {
  const Grid& g = *rhs.grid;
  const std::int64_t n = g.interior_count();
  Eigen::MatrixXd A = assemble_neg_laplacian(g) / m;
  A += Eigen::MatrixXd::Identity(n, n);
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  Eigen::VectorXd re(n), im(n);
  for (std::int64_t i = 0; i < n; ++i) {
    re(i) = rhs.v[i].real();
    im(i) = rhs.v[i].imag();
  }
  Eigen::VectorXd xre = llt.solve(re);
  Eigen::VectorXd xim = llt.solve(im);
  GridFunction x(rhs.grid);
  for (std::int64_t i = 0; i < n; ++i) x.v[i] = {xre(i), xim(i)};
  return x;
}

DenseEigen dense_laplacian_eigen(const GridPtr& grid) {
  Eigen::MatrixXd A = assemble_neg_laplacian(*grid);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  DenseEigen out;
  out.n = grid->interior_count();
  out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + out.n);
  out.vectors.assign(es.eigenvectors().data(),
                     es.eigenvectors().data() + out.n * out.n);
  return out;
}

}  // namespace nlslab
