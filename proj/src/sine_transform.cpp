#include "sine_transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace nlslab {

namespace {
// FFTW planner calls are not thread-safe; executions on distinct arrays are.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

SineTransform::SineTransform(const GridPtr& grid) : grid_(grid) {
  if (!grid_->full_rectangle())
    throw std::invalid_argument("SineTransform requires a full-rectangle mask");
  n_[0] = grid_->nodes(0) - 2;  // interior points per axis
  n_[1] = grid_->dim() == 2 ? grid_->nodes(1) - 2 : 1;
  n_total_ = static_cast<std::int64_t>(n_[0]) * n_[1];

  norm_factor_ = 1.0 / (2.0 * (n_[0] + 1));
  if (grid_->dim() == 2) norm_factor_ /= 2.0 * (n_[1] + 1);

  mu_.resize(n_total_);
  for (int ky = 1; ky <= n_[1]; ++ky)
    for (int kx = 1; kx <= n_[0]; ++kx)
      mu_[static_cast<std::int64_t>(ky - 1) * n_[0] + (kx - 1)] = eigenvalue(kx, ky);

  scratch_re_.resize(n_total_);
  scratch_im_.resize(n_total_);

  std::lock_guard<std::mutex> lock(planner_mutex());
  // FFTW_UNALIGNED so the plan can be executed on any caller buffer
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  if (grid_->dim() == 1) {
    plan_ = fftw_plan_r2r_1d(n_[0], scratch_re_.data(), scratch_re_.data(),
                             FFTW_RODFT00, flags);
  } else {
    plan_ = fftw_plan_r2r_2d(n_[1], n_[0], scratch_re_.data(), scratch_re_.data(),
                             FFTW_RODFT00, FFTW_RODFT00, flags);
  }
  if (!plan_) throw std::runtime_error("SineTransform: fftw planning failed");
}

SineTransform::~SineTransform() {
  if (plan_) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
}

void SineTransform::raw_transform(double* data) const {
  fftw_execute_r2r(static_cast<fftw_plan>(plan_), data, data);
}

double SineTransform::eigenvalue(int kx, int ky) const {
  auto axis_mu = [&](int k, int n, double dx) {
    double s = std::sin(0.5 * M_PI * k / (n + 1));
    return 4.0 / (dx * dx) * s * s;
  };
  double mu = axis_mu(kx, n_[0], grid_->dx(0));
  if (grid_->dim() == 2) mu += axis_mu(ky, n_[1], grid_->dx(1));
  return mu;
}

}  // namespace nlslab
