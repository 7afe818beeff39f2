#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "io_util.hpp"
#include "logsplit.hpp"

namespace nlslab {

DomainSpec DomainSpec::box1d(double lo, double hi, double dx) {
  DomainSpec s;
  s.dim = 1;
  s.lo = {lo, 0.0};
  s.hi = {hi, 0.0};
  s.dx = {dx, 1.0};
  return s;
}

DomainSpec DomainSpec::box2d(double lox, double hix, double loy, double hiy,
                             double dxx, double dxy) {
  DomainSpec s;
  s.dim = 2;
  s.lo = {lox, loy};
  s.hi = {hix, hiy};
  s.dx = {dxx, dxy};
  return s;
}

std::array<int, 2> DomainSpec::cell_counts() const {
  std::array<int, 2> c{1, 1};
  for (int a = 0; a < dim; ++a) {
    double side = hi[a] - lo[a];
    if (!(side > 0.0) || !(dx[a] > 0.0))
      throw std::invalid_argument("domain: box side and spacing must be positive");
    double n = side / dx[a];
    double rounded = std::round(n);
    if (std::abs(n - rounded) > 1e-9 * std::max(1.0, n))
      throw std::invalid_argument("domain: spacing must divide the box side");
    if (rounded < 2)
      throw std::invalid_argument("domain: need at least 2 cells per axis");
    c[a] = static_cast<int>(rounded);
  }
  return c;
}

void DomainSpec::validate() const {
  if (dim != 1 && dim != 2) throw std::invalid_argument("domain: dimension must be 1 or 2");
  auto c = cell_counts();
  std::size_t nodes = static_cast<std::size_t>(c[0] + 1) * (dim == 2 ? c[1] + 1 : 1);
  if (!mask.empty() && mask.size() != nodes)
    throw std::invalid_argument("domain: mask size does not match node count");
}

Grid::Grid(const DomainSpec& spec) : spec_(spec), dim_(spec.dim) {
  spec.validate();
  auto cells = spec.cell_counts();
  nodes_ = {cells[0] + 1, dim_ == 2 ? cells[1] + 1 : 1};
  lo_ = spec.lo;
  dx_ = spec.dx;
  cell_measure_ = dx_[0] * (dim_ == 2 ? dx_[1] : 1.0);

  std::int64_t total = static_cast<std::int64_t>(nodes_[0]) * nodes_[1];
  node_to_interior_.assign(total, -1);
  auto on_border = [&](int ix, int iy) {
    if (ix == 0 || ix == nodes_[0] - 1) return true;
    if (dim_ == 2 && (iy == 0 || iy == nodes_[1] - 1)) return true;
    return false;
  };
  auto masked = [&](std::int64_t node) {
    return spec.mask.empty() || spec.mask[node] != 0;
  };

  full_rectangle_ = true;
  for (int iy = 0; iy < nodes_[1]; ++iy) {
    for (int ix = 0; ix < nodes_[0]; ++ix) {
      std::int64_t node = static_cast<std::int64_t>(iy) * nodes_[0] + ix;
      if (on_border(ix, iy)) continue;
      if (!masked(node)) {
        full_rectangle_ = false;
        continue;
      }
      node_to_interior_[node] = static_cast<std::int32_t>(interior_to_node_.size());
      interior_to_node_.push_back(node);
    }
  }
  if (interior_to_node_.empty())
    throw std::invalid_argument("domain: mask leaves no interior point");

  neighbors_.assign(interior_to_node_.size() * 4, -1);
  for (std::size_t i = 0; i < interior_to_node_.size(); ++i) {
    std::int64_t node = interior_to_node_[i];
    int ix = static_cast<int>(node % nodes_[0]);
    int iy = static_cast<int>(node / nodes_[0]);
    const std::array<std::array<int, 2>, 4> off{{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
    for (int d = 0; d < 2 * dim_; ++d) {
      int jx = ix + off[d][0], jy = iy + off[d][1];
      std::int64_t nb = static_cast<std::int64_t>(jy) * nodes_[0] + jx;
      neighbors_[i * 4 + d] = node_to_interior_[nb];
    }
  }

  // digest over geometry + mask so snapshot headers can detect grid mismatch
  Fnv1a h;
  h.add_u64(static_cast<std::uint64_t>(dim_));
  for (int a = 0; a < dim_; ++a) {
    h.add_f64(lo_[a]);
    h.add_f64(spec.hi[a]);
    h.add_f64(dx_[a]);
  }
  for (std::int64_t node = 0; node < total; ++node)
    h.add_u64(node_to_interior_[node] >= 0 ? 1 : 0);
  digest_ = h.value();
}

std::array<double, 2> Grid::coords(std::int32_t interior) const {
  std::int64_t node = interior_to_node_[interior];
  int ix = static_cast<int>(node % nodes_[0]);
  int iy = static_cast<int>(node / nodes_[0]);
  return {lo_[0] + ix * dx_[0], dim_ == 2 ? lo_[1] + iy * dx_[1] : 0.0};
}

GridPtr build_grid(const DomainSpec& spec) { return std::make_shared<Grid>(spec); }

bool GridFunction::finite() const {
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

static void check_same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.grid != b.grid && (!a.grid || !b.grid || a.grid->digest() != b.grid->digest()))
    throw std::invalid_argument("grid mismatch between fields");
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  check_same_grid(a, b);
  GridFunction r(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) r.v[i] = a.v[i] + b.v[i];
  return r;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  check_same_grid(a, b);
  GridFunction r(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) r.v[i] = a.v[i] - b.v[i];
  return r;
}

GridFunction operator*(cplx s, const GridFunction& a) {
  GridFunction r(a.grid);
  for (std::size_t i = 0; i < a.v.size(); ++i) r.v[i] = s * a.v[i];
  return r;
}

void axpy(cplx a, const GridFunction& x, GridFunction& y) {
  check_same_grid(x, y);
  for (std::size_t i = 0; i < x.v.size(); ++i) y.v[i] += a * x.v[i];
}

cplx inner(const GridFunction& u, const GridFunction& v) {
  check_same_grid(u, v);
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.v.size(); ++i) s += u.v[i] * std::conj(v.v[i]);
  return s * u.grid->cell_measure();
}

GridFunction apply_laplacian(const GridFunction& u) {
  const Grid& g = *u.grid;
  GridFunction r(u.grid);
  const double wx = 1.0 / (g.dx(0) * g.dx(0));
  const double wy = g.dim() == 2 ? 1.0 / (g.dx(1) * g.dx(1)) : 0.0;
  const std::int64_t n = g.interior_count();
  for (std::int32_t i = 0; i < n; ++i) {
    cplx acc = -2.0 * wx * u.v[i];
    std::int32_t nb;
    if ((nb = g.neighbor(i, 0)) >= 0) acc += wx * u.v[nb];
    if ((nb = g.neighbor(i, 1)) >= 0) acc += wx * u.v[nb];
    if (g.dim() == 2) {
      acc -= 2.0 * wy * u.v[i];
      if ((nb = g.neighbor(i, 2)) >= 0) acc += wy * u.v[nb];
      if ((nb = g.neighbor(i, 3)) >= 0) acc += wy * u.v[nb];
    }
    r.v[i] = acc;
  }
  return r;
}

double lp_norm(const GridFunction& u, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) return linf_norm(u);
  double s = 0.0;
  for (const auto& z : u.v) s += std::pow(std::abs(z), p);
  return std::pow(s * u.grid->cell_measure(), 1.0 / p);
}

double linf_norm(const GridFunction& u) {
  double m = 0.0;
  for (const auto& z : u.v) m = std::max(m, std::abs(z));
  return m;
}

// Sums |du|^r / dx^r over every lattice edge with at least one interior
// endpoint, weighting by the cell measure; exterior endpoints count as zero.
// For r=2 this makes <-Lap u, u> = |grad u|^2 an exact identity.
static double grad_pow_sum(const GridFunction& u, double r) {
  const Grid& g = *u.grid;
  double s = 0.0;
  const std::int64_t n = g.interior_count();
  for (std::int32_t i = 0; i < n; ++i) {
    for (int d = 0; d < 2 * g.dim(); ++d) {
      std::int32_t nb = g.neighbor(i, d);
      double dx = g.dx(d / 2);
      if (nb >= 0) {
        // interior-interior edges visited once, from the lower endpoint
        if (d == 1 || d == 3) {
          double diff = std::abs(u.v[nb] - u.v[i]) / dx;
          s += std::pow(diff, r);
        }
      } else {
        // boundary edge: the exterior value is 0
        double diff = std::abs(u.v[i]) / dx;
        s += std::pow(diff, r);
      }
    }
  }
  return s * g.cell_measure();
}

double h1_seminorm(const GridFunction& u) { return std::sqrt(grad_pow_sum(u, 2.0)); }

double h1_norm(const GridFunction& u) {
  double l2 = lp_norm(u, 2.0);
  double semi = h1_seminorm(u);
  return std::sqrt(l2 * l2 + semi * semi);
}

double w1r_seminorm(const GridFunction& u, double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("w1r_seminorm: r must be >= 1");
  return std::pow(grad_pow_sum(u, r), 1.0 / r);
}

double w1r_norm(const GridFunction& u, double r) {
  double a = std::pow(lp_norm(u, r), r);
  double b = grad_pow_sum(u, r);
  return std::pow(a + b, 1.0 / r);
}

double luxemburg_norm(const GridFunction& u) {
  const double meas = u.grid->cell_measure();
  double l1 = 0.0, linf = 0.0;
  for (const auto& z : u.v) {
    double r = std::abs(z);
    l1 += r;
    linf = std::max(linf, r);
  }
  l1 *= meas;
  if (linf == 0.0) return 0.0;

  auto constraint = [&](double k) {
    double s = 0.0;
    for (const auto& z : u.v) s += orlicz_weight_A(std::abs(z) / k);
    return s * meas;
  };

  double klo = std::max(l1 / u.grid->measure(), 1e-300);
  double khi = linf * std::exp(3.0);
  while (constraint(klo) < 1.0 && klo > 1e-280) klo *= 0.5;
  while (constraint(khi) > 1.0 && khi < 1e280) khi *= 2.0;
  // invariant: constraint(klo) >= 1 >= constraint(khi)
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (klo + khi);
    if (constraint(mid) > 1.0)
      klo = mid;
    else
      khi = mid;
    double c = constraint(khi);
    if (c >= 1.0 - 1e-10 && c <= 1.0) break;
  }
  return khi;
}

double norm(const GridFunction& u, NormKind kind, double p) {
  switch (kind) {
    case NormKind::Lp: return lp_norm(u, p);
    case NormKind::Linf: return linf_norm(u);
    case NormKind::H1: return h1_norm(u);
    case NormKind::H1Seminorm: return h1_seminorm(u);
    case NormKind::Luxemburg: return luxemburg_norm(u);
  }
  throw std::logic_error("norm: bad kind");
}

double cutoff_profile(double s) {
  if (s <= 1.0) return 1.0;
  if (s >= 2.0) return 0.0;
  double t = s - 1.0;  // in (0,1)
  double step = t * t * t * (t * (6.0 * t - 15.0) + 10.0);
  return 1.0 - step;
}

GridFunction cutoff_field(const GridPtr& grid, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("cutoff_field: R must be positive");
  GridFunction psi(grid);
  const std::int64_t n = grid->interior_count();
  for (std::int32_t i = 0; i < n; ++i) {
    auto xy = grid->coords(i);
    double r = grid->dim() == 2 ? std::hypot(xy[0], xy[1]) : std::abs(xy[0]);
    psi.v[i] = cutoff_profile(r / R);
  }
  return psi;
}

GridFunction multiply(const GridFunction& weight, const GridFunction& u) {
  check_same_grid(weight, u);
  GridFunction r(u.grid);
  for (std::size_t i = 0; i < u.v.size(); ++i) r.v[i] = weight.v[i] * u.v[i];
  return r;
}

// ---- domain text serialization ----------------------------------------

static std::string rle_encode(const std::vector<std::uint8_t>& mask) {
  std::ostringstream os;
  std::size_t i = 0;
  while (i < mask.size()) {
    std::size_t j = i;
    while (j < mask.size() && mask[j] == mask[i]) ++j;
    if (i) os << ' ';
    os << (j - i) << 'x' << int(mask[i] ? 1 : 0);
    i = j;
  }
  return os.str();
}

static std::vector<std::uint8_t> rle_decode(const std::string& text) {
  std::vector<std::uint8_t> mask;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    auto x = tok.find('x');
    if (x == std::string::npos) throw std::invalid_argument("domain: bad mask run " + tok);
    long count = std::stol(tok.substr(0, x));
    int val = std::stoi(tok.substr(x + 1));
    mask.insert(mask.end(), count, static_cast<std::uint8_t>(val ? 1 : 0));
  }
  return mask;
}

std::string domain_to_text(const DomainSpec& spec) {
  std::ostringstream os;
  os << "nlslab-domain v1\n";
  os << "dimension = " << spec.dim << "\n";
  os << "box_x = " << format_double(spec.lo[0]) << ' ' << format_double(spec.hi[0]) << "\n";
  if (spec.dim == 2)
    os << "box_y = " << format_double(spec.lo[1]) << ' ' << format_double(spec.hi[1]) << "\n";
  os << "spacing = " << format_double(spec.dx[0]);
  if (spec.dim == 2) os << ' ' << format_double(spec.dx[1]);
  os << "\n";
  os << "mask = " << (spec.mask.empty() ? std::string("full") : "rle " + rle_encode(spec.mask))
     << "\n";
  return os.str();
}

DomainSpec domain_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("nlslab-domain", 0) != 0)
    throw std::invalid_argument("domain: missing header line");
  DomainSpec spec;
  spec.dx = {0.0, 0.0};
  while (std::getline(is, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    key = trim(key);
    val = trim(val);
    std::istringstream vs(val);
    if (key == "dimension") {
      vs >> spec.dim;
    } else if (key == "box_x") {
      vs >> spec.lo[0] >> spec.hi[0];
    } else if (key == "box_y") {
      vs >> spec.lo[1] >> spec.hi[1];
    } else if (key == "spacing") {
      vs >> spec.dx[0];
      if (!(vs >> spec.dx[1])) spec.dx[1] = 1.0;
    } else if (key == "mask") {
      if (val == "full")
        spec.mask.clear();
      else if (val.rfind("rle ", 0) == 0)
        spec.mask = rle_decode(val.substr(4));
      else
        throw std::invalid_argument("domain: bad mask value");
    }
  }
  if (spec.dim == 1) spec.dx[1] = 1.0;
  spec.validate();
  return spec;
}

// ---- snapshots ----------------------------------------------------------
//
// Binary layout (little-endian):
//   magic "NLSB", u32 version(=1), u64 config_digest, u64 grid_digest,
//   u32 dim, u32 cells_x, u32 cells_y, f64 lo_x, f64 lo_y, f64 dx_x, f64 dx_y,
//   u64 n_interior, then n_interior * (f64 re, f64 im) in interior order.

void write_snapshot(const std::string& path, const GridFunction& u,
                    std::uint64_t config_digest) {
  const Grid& g = *u.grid;
  std::string buf;
  auto put = [&](const void* p, std::size_t n) {
    buf.append(reinterpret_cast<const char*>(p), n);
  };
  auto put_u32 = [&](std::uint32_t x) { put(&x, 4); };
  auto put_u64 = [&](std::uint64_t x) { put(&x, 8); };
  auto put_f64 = [&](double x) { put(&x, 8); };

  buf.append("NLSB", 4);
  put_u32(1);
  put_u64(config_digest);
  put_u64(g.digest());
  put_u32(static_cast<std::uint32_t>(g.dim()));
  put_u32(static_cast<std::uint32_t>(g.nodes(0) - 1));
  put_u32(static_cast<std::uint32_t>(g.dim() == 2 ? g.nodes(1) - 1 : 0));
  put_f64(g.lo(0));
  put_f64(g.dim() == 2 ? g.lo(1) : 0.0);
  put_f64(g.dx(0));
  put_f64(g.dim() == 2 ? g.dx(1) : 0.0);
  put_u64(static_cast<std::uint64_t>(g.interior_count()));
  for (const auto& z : u.v) {
    put_f64(z.real());
    put_f64(z.imag());
  }
  atomic_write_file(path, buf);
}

GridFunction read_snapshot(const std::string& path, const GridPtr& grid) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("snapshot: cannot open " + path);
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < 64 || buf.compare(0, 4, "NLSB") != 0)
    throw std::runtime_error("snapshot: bad header in " + path);
  std::size_t off = 4;
  auto get_u32 = [&]() {
    std::uint32_t x;
    std::memcpy(&x, buf.data() + off, 4);
    off += 4;
    return x;
  };
  auto get_u64 = [&]() {
    std::uint64_t x;
    std::memcpy(&x, buf.data() + off, 8);
    off += 8;
    return x;
  };
  std::uint32_t version = get_u32();
  if (version != 1) throw std::runtime_error("snapshot: unsupported version");
  get_u64();  // config digest, informational
  std::uint64_t gdig = get_u64();
  if (gdig != grid->digest())
    throw std::runtime_error("snapshot: grid digest mismatch in " + path);
  off += 2 * 4 + 1 * 4 + 4 * 8;  // dim, cells, lo, dx (already covered by digest)
  std::uint64_t n = get_u64();
  if (n != static_cast<std::uint64_t>(grid->interior_count()))
    throw std::runtime_error("snapshot: interior count mismatch");
  if (buf.size() < off + 16 * n) throw std::runtime_error("snapshot: truncated file");
  GridFunction u(grid);
  for (std::uint64_t i = 0; i < n; ++i) {
    double re, im;
    std::memcpy(&re, buf.data() + off, 8);
    std::memcpy(&im, buf.data() + off + 8, 8);
    off += 16;
    u.v[i] = {re, im};
  }
  return u;
}

std::string snapshot_to_csv(const GridFunction& u) {
  std::ostringstream os;
  os << "index,re,im\n";
  for (std::size_t i = 0; i < u.v.size(); ++i)
    os << i << ',' << format_double(u.v[i].real()) << ',' << format_double(u.v[i].imag())
       << "\n";
  return os.str();
}

}  // namespace nlslab
