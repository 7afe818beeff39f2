#include "convergence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace nlslab {

namespace {
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}
}  // namespace

FamilyRunResult run_family(const SchemeConfig& base, const GridFunction& phi,
                           const std::vector<double>& ms, int workers) {
  for (std::size_t i = 1; i < ms.size(); ++i)
    if (!(ms[i] > ms[i - 1]))
      throw std::invalid_argument("run_family: ms must be strictly increasing");
  FamilyRunResult out;
  out.ms = ms;
  out.records.resize(ms.size());
  out.errors.resize(ms.size());
  parallel_for(ms.size(), workers, [&](std::size_t i) {
    SchemeConfig cfg = base;
    cfg.m = ms[i];
    try {
      out.records[i] = evolve(cfg, phi);
      if (out.records[i]->aborted) {
        out.errors[i] = "run aborted (non-finite field)";
      }
    } catch (const std::exception& e) {
      out.errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (!out.errors[i].empty()) out.ok = false;
  return out;
}

std::vector<std::vector<double>> cauchy_distances(
    const std::vector<const TrajectoryRecord*>& records,
    std::optional<double> localization_R) {
  const std::size_t k = records.size();
  std::vector<std::vector<double>> dist(k, std::vector<double>(k, 0.0));
  if (k == 0) return dist;
  const auto& t0 = records[0]->snapshot_times;
  for (const auto* r : records) {
    if (r->snapshot_times.size() != t0.size())
      throw std::invalid_argument("cauchy_distances: unaligned snapshot grids");
    for (std::size_t s = 0; s < t0.size(); ++s)
      if (std::abs(r->snapshot_times[s] - t0[s]) > 1e-12 * std::max(1.0, t0[s]))
        throw std::invalid_argument("cauchy_distances: unaligned snapshot times");
  }
  std::optional<GridFunction> psi;
  if (localization_R && !records.empty() && !records[0]->snapshots.empty())
    psi = cutoff_field(records[0]->snapshots[0].grid, *localization_R);

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      double sup = 0.0;
      for (std::size_t s = 0; s < t0.size(); ++s) {
        GridFunction diff = records[i]->snapshots[s] - records[j]->snapshots[s];
        if (psi) diff = multiply(*psi, diff);
        sup = std::max(sup, lp_norm(diff, 2.0));
      }
      dist[i][j] = dist[j][i] = sup;
    }
  }
  return dist;
}

RateFit fit_rate(const std::vector<double>& ms, const std::vector<double>& distances) {
  if (ms.size() != distances.size() || ms.size() < 3)
    throw std::invalid_argument("fit_rate: need >= 3 aligned points");
  for (double d : distances)
    if (!(d > 0.0)) throw std::invalid_argument("fit_rate: distances must be positive");
  const std::size_t n = ms.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::log(ms[i]);
    double y = std::log(distances[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  RateFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.exponent * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::log(distances[i]) - (fit.intercept + fit.exponent * std::log(ms[i]));
    ss += r * r;
  }
  fit.fit_residual = std::sqrt(ss / n);
  return fit;
}

TruncationResidual truncation_residual(const NonlinearityFamily& family, double m,
                                       const GridFunction& u) {
  TruncationResidual out;
  const double meas = u.grid->cell_measure();
  if (family.kind == FamilyKind::Logarithmic) {
    double sa = 0.0, sb = 0.0;
    for (const auto& z : u.v) {
      LogPair trunc = eval_log_pair(m, z);
      LogPair full = eval_log_pair(kUntruncated, z);
      sa += std::norm(trunc.a - full.a);
      sb += std::norm(trunc.b - full.b);
    }
    out.total = std::sqrt(sa * meas);
    out.b_part = std::sqrt(sb * meas);
    return out;
  }
  double s = 0.0;
  for (const auto& z : u.v)
    s += std::norm(eval_g_trunc(family, m, z) - eval_g(family, z));
  out.total = std::sqrt(s * meas);
  return out;
}

double damped_cauchy_bound(double t_final, double domain_measure, double phi_l2,
                           double alpha, double m, double n) {
  return 8.0 * t_final * std::sqrt(domain_measure) * phi_l2 *
         (std::pow(m, alpha - 1.0) + std::pow(n, alpha - 1.0));
}

YudovichReport yudovich_probe(const GridFunction& u, const GridFunction& v,
                              const std::vector<double>& ps) {
  YudovichReport rep;
  GridFunction diff = u - v;
  rep.l2_distance = lp_norm(diff, 2.0);
  double d2 = rep.l2_distance;
  double d6 = lp_norm(diff, 6.0);
  double v_h1 = h1_norm(v);
  double best = 0.0;
  for (double p : ps) {
    if (!(p > 2.0)) throw std::invalid_argument("yudovich_probe: need p > 2");
    YudovichRow row;
    row.p = p;
    double theta = 3.0 / (2.0 * p);
    double two_pprime = 2.0 * p / (p - 1.0);
    row.dist_2pprime = lp_norm(diff, two_pprime);
    row.interpolation_bound = std::pow(d2, 1.0 - theta) * std::pow(d6, theta);
    row.sqrtp_ratio = v_h1 > 0.0 ? lp_norm(v, 2.0 * p) / (std::sqrt(p) * v_h1) : 0.0;
    row.envelope = d2 > 0.0 ? p * std::pow(d2, 2.0 * (1.0 - theta)) : 0.0;
    rep.rows.push_back(row);
    if (rep.best_p == 0.0 || (d2 > 0.0 && row.envelope < best)) {
      best = row.envelope;
      rep.best_p = p;
    }
  }
  return rep;
}

DependenceReport dependence_probe(const SchemeConfig& config, const GridFunction& phi,
                                  const GridFunction& dphi,
                                  const std::vector<double>& scales, int workers) {
  double dphi_h1 = h1_norm(dphi);
  if (std::abs(dphi_h1 - 1.0) > 1e-8)
    throw std::invalid_argument("dependence_probe: perturbation must be H1-normalized");
  for (std::size_t i = 1; i < scales.size(); ++i)
    if (!(scales[i] < scales[i - 1]))
      throw std::invalid_argument("dependence_probe: scales must decrease");

  SchemeConfig cfg = config;
  if (cfg.snapshot_stride <= 0) cfg.snapshot_stride = 1;
  TrajectoryRecord base = evolve(cfg, phi);

  DependenceReport rep;
  rep.rows.resize(scales.size());
  std::vector<std::vector<double>> l2_series(scales.size());
  parallel_for(scales.size(), workers, [&](std::size_t i) {
    GridFunction pert = phi;
    axpy(scales[i], dphi, pert);
    TrajectoryRecord run = evolve(cfg, pert);
    DependenceRow row;
    row.scale = scales[i];
    std::vector<double> series;
    for (std::size_t s = 0; s < base.snapshots.size(); ++s) {
      GridFunction diff = run.snapshots[s] - base.snapshots[s];
      double l2 = lp_norm(diff, 2.0);
      row.sup_l2 = std::max(row.sup_l2, l2);
      row.sup_h1 = std::max(row.sup_h1, h1_norm(diff));
      series.push_back(l2);
    }
    l2_series[i] = std::move(series);
    rep.rows[i] = row;
  });

  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].sup_l2 > rep.rows[i - 1].sup_l2) rep.monotone = false;

  // growth-rate fit of log d(t) against t for the largest scale
  if (!l2_series.empty() && base.snapshot_times.size() >= 3) {
    const auto& series = l2_series[0];
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t s = 0; s < series.size(); ++s) {
      if (!(series[s] > 0.0)) continue;
      double x = base.snapshot_times[s];
      double y = std::log(series[s]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    if (n >= 3) rep.gronwall_c = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return rep;
}

}  // namespace nlslab
