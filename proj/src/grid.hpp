#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace nlslab {

using cplx = std::complex<double>;

// Open set in R^N (N=1,2) described as an axis-aligned box plus a boolean
// mask over the lattice nodes. Nodes on the box border are always exterior,
// so the homogeneous Dirichlet condition is representable by the implicit
// zero extension.
struct DomainSpec {
  int dim = 1;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
  std::array<double, 2> dx{0.1, 0.1};
  // Row-major over all nodes ((cells[0]+1) * (cells[1]+1) entries, x fastest);
  // empty means "every non-border node is interior".
  std::vector<std::uint8_t> mask;

  static DomainSpec box1d(double lo, double hi, double dx);
  static DomainSpec box2d(double lox, double hix, double loy, double hiy,
                          double dxx, double dxy);

  // cells per axis; throws if dx does not divide the side to ~1e-9 relative
  std::array<int, 2> cell_counts() const;
  void validate() const;
};

std::string domain_to_text(const DomainSpec& spec);
DomainSpec domain_from_text(const std::string& text);

class Grid {
 public:
  explicit Grid(const DomainSpec& spec);

  int dim() const { return dim_; }
  // lattice nodes per axis, including the border ring
  int nodes(int axis) const { return nodes_[axis]; }
  double lo(int axis) const { return lo_[axis]; }
  double dx(int axis) const { return dx_[axis]; }
  double cell_measure() const { return cell_measure_; }
  std::int64_t interior_count() const {
    return static_cast<std::int64_t>(interior_to_node_.size());
  }
  double measure() const { return cell_measure_ * interior_count(); }
  bool full_rectangle() const { return full_rectangle_; }

  // flat node id (row-major, x fastest) <-> interior index; -1 if exterior
  std::int32_t interior_index(std::int64_t node) const {
    return node_to_interior_[node];
  }
  std::int64_t node_of(std::int32_t interior) const {
    return interior_to_node_[interior];
  }
  // neighbor interior index in direction d (0:-x, 1:+x, 2:-y, 3:+y); -1 means
  // the neighbor is exterior (Dirichlet zero)
  std::int32_t neighbor(std::int32_t interior, int d) const {
    return neighbors_[static_cast<std::size_t>(interior) * 4 + d];
  }

  std::array<double, 2> coords(std::int32_t interior) const;
  const DomainSpec& spec() const { return spec_; }
  std::uint64_t digest() const { return digest_; }

 private:
  DomainSpec spec_;
  int dim_;
  std::array<int, 2> nodes_{1, 1};
  std::array<double, 2> lo_{}, dx_{};
  double cell_measure_ = 0.0;
  bool full_rectangle_ = false;
  std::vector<std::int32_t> node_to_interior_;
  std::vector<std::int64_t> interior_to_node_;
  std::vector<std::int32_t> neighbors_;
  std::uint64_t digest_ = 0;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const DomainSpec& spec);

// Complex field on the interior nodes; identically zero outside.
struct GridFunction {
  GridPtr grid;
  std::vector<cplx> v;

  GridFunction() = default;
  explicit GridFunction(GridPtr g) : grid(std::move(g)), v(grid->interior_count()) {}
  GridFunction(GridPtr g, std::vector<cplx> vals) : grid(std::move(g)), v(std::move(vals)) {}

  std::int64_t size() const { return static_cast<std::int64_t>(v.size()); }
  bool finite() const;
};

// field arithmetic used by the solvers
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(cplx s, const GridFunction& a);
void axpy(cplx a, const GridFunction& x, GridFunction& y);  // y += a*x

// discrete L2 pairing <u,v> = sum u_i conj(v_i) * cell_measure
cplx inner(const GridFunction& u, const GridFunction& v);

// 2N+1-point Dirichlet stencil; exterior neighbors contribute zero
GridFunction apply_laplacian(const GridFunction& u);

enum class NormKind { Lp, Linf, H1, H1Seminorm, Luxemburg };

double lp_norm(const GridFunction& u, double p);  // p >= 1; rejects p < 1
double linf_norm(const GridFunction& u);          // max over nodes, no weight
// forward differences over all lattice edges with an interior endpoint
double h1_seminorm(const GridFunction& u);
double h1_norm(const GridFunction& u);
// Luxemburg norm of the Orlicz space generated by the log-split weight A:
// inf{ k>0 : integral A(|u|/k) <= 1 }, bisection to 1e-10
double luxemburg_norm(const GridFunction& u);

double norm(const GridFunction& u, NormKind kind, double p = 2.0);

// gradient seminorm with exponent r (same edge set as h1_seminorm)
double w1r_seminorm(const GridFunction& u, double r);
double w1r_norm(const GridFunction& u, double r);

// radial cutoff psi_R: 1 on |x|<=R, 0 on |x|>=2R, quintic taper between
GridFunction cutoff_field(const GridPtr& grid, double R);
double cutoff_profile(double s);  // s = |x|/R; the scalar taper

// pointwise product by a real field
GridFunction multiply(const GridFunction& weight, const GridFunction& u);

// snapshot serialization (little-endian binary; see io_util.cpp for layout)
void write_snapshot(const std::string& path, const GridFunction& u,
                    std::uint64_t config_digest);
GridFunction read_snapshot(const std::string& path, const GridPtr& grid);
std::string snapshot_to_csv(const GridFunction& u);

}  // namespace nlslab
