#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "grid.hpp"

namespace nlslab {

struct SolverError : std::runtime_error {
  SolverError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

using LinearOp = std::function<GridFunction(const GridFunction&)>;

// CG for a Hermitian positive definite operator; relative residual tolerance.
// Throws SolverError (with the residual history) on non-convergence.
GridFunction conjugate_gradient(const LinearOp& apply, const GridFunction& rhs,
                                double tol, int max_iter, SolveStats* stats = nullptr);

// Dense factorization path for oracle cross-checks (<= 4096 unknowns).
// Solves (I - Lap/m) x = rhs.
GridFunction dense_shifted_solve(const GridFunction& rhs, double m);

// Dense spectral decomposition of -Laplacian (<= 4096 unknowns): returns
// eigenvalues ascending and the orthonormal eigenvectors as columns, both in
// interior ordering. Used only by oracles/tests but lives here so the dense
// assembly is shared.
struct DenseEigen {
  std::vector<double> eigenvalues;
  std::vector<double> vectors;  // column-major n x n
  std::int64_t n = 0;
};
DenseEigen dense_laplacian_eigen(const GridPtr& grid);

}  // namespace nlslab
