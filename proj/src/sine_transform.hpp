#pragma once

#include <memory>
#include <vector>

#include "grid.hpp"

namespace nlslab {

// DST-I over the interior nodes of a full-rectangle grid. This is the exact
// eigenbasis of the discrete Dirichlet Laplacian, so the spectral solvers and
// the exact linear propagator are both built on it. FFTW's RODFT00 is its own
// inverse up to the factor 2(n+1) per axis.
class SineTransform {
 public:
  explicit SineTransform(const GridPtr& grid);  // requires full_rectangle()
  ~SineTransform();
  SineTransform(const SineTransform&) = delete;
  SineTransform& operator=(const SineTransform&) = delete;

  // unnormalized in-place RODFT00 along every axis (interior-ordered data)
  void raw_transform(double* data) const;
  // product over axes of 1/(2(n+1)); applying raw twice scales by 1/norm_factor
  double norm_factor() const { return norm_factor_; }

  // eigenvalue of -Laplacian for the interior mode with 1-based indices k
  double eigenvalue(int kx, int ky) const;
  const std::vector<double>& mode_eigenvalues() const { return mu_; }

  // u -> multiplier(mu) applied in the sine basis (normalization folded in)
  template <class F>
  void apply_multiplier(GridFunction& u, F&& multiplier) const;

  std::int64_t size() const { return n_total_; }

 private:
  GridPtr grid_;
  std::int64_t n_total_;
  std::array<int, 2> n_{1, 1};
  double norm_factor_;
  std::vector<double> mu_;  // -Laplacian eigenvalue per interior mode
  void* plan_ = nullptr;    // fftw_plan
  mutable std::vector<double> scratch_re_, scratch_im_;
};

template <class F>
void SineTransform::apply_multiplier(GridFunction& u, F&& multiplier) const {
  std::vector<double> re(n_total_), im(n_total_);
  for (std::int64_t i = 0; i < n_total_; ++i) {
    re[i] = u.v[i].real();
    im[i] = u.v[i].imag();
  }
  raw_transform(re.data());
  raw_transform(im.data());
  for (std::int64_t i = 0; i < n_total_; ++i) {
    cplx c = multiplier(mu_[i]) * norm_factor_;
    cplx z = c * cplx(re[i], im[i]);
    re[i] = z.real();
    im[i] = z.imag();
  }
  raw_transform(re.data());
  raw_transform(im.data());
  for (std::int64_t i = 0; i < n_total_; ++i) u.v[i] = {re[i], im[i]};
}

}  // namespace nlslab
