#include "initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "sine_transform.hpp"

namespace nlslab {

namespace {
std::array<double, 2> center_of(const GridPtr& grid, const std::vector<double>& center) {
  std::array<double, 2> c{0.0, 0.0};
  if (center.empty()) {
    for (int a = 0; a < grid->dim(); ++a)
      c[a] = grid->lo(a) + 0.5 * (grid->nodes(a) - 1) * grid->dx(a);
  } else {
    for (int a = 0; a < grid->dim(); ++a)
      c[a] = center[std::min<std::size_t>(a, center.size() - 1)];
  }
  return c;
}

double dist_to(const GridPtr& grid, std::int32_t i, const std::array<double, 2>& c) {
  auto xy = grid->coords(i);
  double dx = xy[0] - c[0];
  double dy = grid->dim() == 2 ? xy[1] - c[1] : 0.0;
  return std::hypot(dx, dy);
}
}  // namespace

GridFunction gaussian_datum(const GridPtr& grid, const std::vector<double>& center,
                            double width, double amplitude) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian: width must be positive");
  auto c = center_of(grid, center);
  GridFunction u(grid);
  for (std::int32_t i = 0; i < grid->interior_count(); ++i) {
    double r = dist_to(grid, i, c);
    u.v[i] = amplitude * std::exp(-r * r / (2.0 * width * width));
  }
  return u;
}

GridFunction sinemode_datum(const GridPtr& grid, int kx, int ky, double amplitude) {
  GridFunction u(grid);
  for (std::int32_t i = 0; i < grid->interior_count(); ++i) {
    auto xy = grid->coords(i);
    double lx = (grid->nodes(0) - 1) * grid->dx(0);
    double val = std::sin(kx * M_PI * (xy[0] - grid->lo(0)) / lx);
    if (grid->dim() == 2) {
      double ly = (grid->nodes(1) - 1) * grid->dx(1);
      val *= std::sin(ky * M_PI * (xy[1] - grid->lo(1)) / ly);
    }
    u.v[i] = amplitude * val;
  }
  return u;
}

GridFunction ring_datum(const GridPtr& grid, const std::vector<double>& center,
                        double radius, double width, double amplitude, int winding) {
  if (grid->dim() != 2) throw std::invalid_argument("ring: needs a 2D grid");
  auto c = center_of(grid, center);
  GridFunction u(grid);
  for (std::int32_t i = 0; i < grid->interior_count(); ++i) {
    auto xy = grid->coords(i);
    double dx = xy[0] - c[0], dy = xy[1] - c[1];
    double r = std::hypot(dx, dy);
    double mag = amplitude * std::exp(-(r - radius) * (r - radius) / (2.0 * width * width));
    double phase = winding != 0 ? winding * std::atan2(dy, dx) : 0.0;
    u.v[i] = std::polar(mag, phase);
  }
  return u;
}

GridFunction bump_datum(const GridPtr& grid, const std::vector<double>& center,
                        double width, double amplitude) {
  auto c = center_of(grid, center);
  GridFunction u(grid);
  for (std::int32_t i = 0; i < grid->interior_count(); ++i) {
    double s = dist_to(grid, i, c) / width;
    u.v[i] = s < 1.0 ? amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
  }
  return u;
}

GridFunction initial_datum_from_config(const GridPtr& grid, const KvDoc& doc) {
  const std::string profile = doc.get_or("initial", "profile", "gaussian");
  double amplitude = doc.get_double_or("initial", "amplitude", 1.0);
  std::vector<double> center = doc.get_list_or("initial", "center", {});
  if (profile == "gaussian")
    return gaussian_datum(grid, center, doc.get_double_or("initial", "width", 0.1),
                          amplitude);
  if (profile == "sinemode")
    return sinemode_datum(grid, static_cast<int>(doc.get_int_or("initial", "k", 1)),
                          static_cast<int>(doc.get_int_or("initial", "ky", 1)), amplitude);
  if (profile == "ring")
    return ring_datum(grid, center, doc.get_double_or("initial", "radius", 0.25),
                      doc.get_double_or("initial", "width", 0.05), amplitude,
                      static_cast<int>(doc.get_int_or("initial", "winding", 0)));
  if (profile == "bump")
    return bump_datum(grid, center, doc.get_double_or("initial", "width", 0.25), amplitude);
  if (profile == "file") return read_snapshot(doc.get("initial", "path"), grid);
  throw std::invalid_argument("initial: unknown profile " + profile);
}

GridFunction random_spectral_field(const GridPtr& grid, Rng& rng, double decay) {
  SineTransform dst(grid);
  const int nx = grid->nodes(0) - 2;
  const int ny = grid->dim() == 2 ? grid->nodes(1) - 2 : 1;
  std::vector<double> re(dst.size()), im(dst.size());
  for (int ky = 1; ky <= ny; ++ky) {
    for (int kx = 1; kx <= nx; ++kx) {
      double kk = grid->dim() == 2 ? std::hypot(double(kx), double(ky)) : double(kx);
      double mag = std::pow(kk, -decay);
      double th = rng.uniform(0.0, 6.283185307179586477);
      double th2 = rng.uniform(0.0, 6.283185307179586477);
      std::int64_t idx = static_cast<std::int64_t>(ky - 1) * nx + (kx - 1);
      re[idx] = mag * std::cos(th);
      im[idx] = mag * std::sin(th2);
    }
  }
  dst.raw_transform(re.data());
  dst.raw_transform(im.data());
  GridFunction u(grid);
  for (std::int64_t i = 0; i < dst.size(); ++i) u.v[i] = {re[i], im[i]};
  return u;
}

GridFunction random_pointwise_field(const GridPtr& grid, Rng& rng) {
  GridFunction u(grid);
  for (auto& z : u.v) z = rng.complex_normal();
  return u;
}

}  // namespace nlslab
