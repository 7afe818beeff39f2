#include "experiment.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "initial_data.hpp"
#include "io_util.hpp"
#include "verify_suites.hpp"

namespace nlslab {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {
std::string list_to_string(const std::vector<double>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ' ';
    os << format_double(xs[i]);
  }
  return os.str();
}
}  // namespace

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  return from_doc(KvDoc::parse_file(path));
}

SchemeConfig parse_scheme_config(const KvDoc& doc) {
  SchemeConfig sc;
  sc.scheme = scheme_from_name(doc.get_or("scheme", "kind", "truncated_direct"));
  double lambda = doc.get_double_or("scheme", "lambda", 1.0);
  double sigma = doc.get_double_or("scheme", "sigma", 2.0);
  double alpha = doc.get_double_or("scheme", "alpha", 0.5);
  switch (sc.scheme) {
    case SchemeKind::TruncatedDirect:
    case SchemeKind::YosidaRegularized:
      sc.family = NonlinearityFamily::power(lambda, sigma);
      break;
    case SchemeKind::LogSplitScheme:
      sc.family = NonlinearityFamily::logarithmic();
      break;
    case SchemeKind::DampedTruncated:
      sc.family = NonlinearityFamily::damping(alpha);
      break;
    case SchemeKind::PowerPlusDamping:
      sc.family = NonlinearityFamily::power_plus_damping(lambda, sigma, alpha);
      break;
  }
  sc.family.sigma_override = doc.get_bool_or("scheme", "sigma_override", false);
  sc.m = doc.get_double_or("scheme", "m", 16.0);
  sc.dt = doc.get_double("scheme", "dt");
  sc.t_final = doc.get_double("scheme", "t_final");
  std::string lin = doc.get_or("scheme", "linear", "spectral");
  if (lin == "spectral")
    sc.linear = LinearSubstep::SpectralExact;
  else if (lin == "crank_nicolson")
    sc.linear = LinearSubstep::CrankNicolson;
  else
    throw std::invalid_argument("config: unknown linear substep " + lin);
  sc.cn_tol = doc.get_double_or("scheme", "cn_tol", 1e-12);
  sc.snapshot_stride = static_cast<int>(doc.get_int_or("scheme", "snapshot_stride", 0));
  sc.diagnostic_stride = static_cast<int>(doc.get_int_or("scheme", "diagnostic_stride", 1));
  return sc;
}

ExperimentConfig ExperimentConfig::from_doc(const KvDoc& doc) {
  ExperimentConfig cfg;
  cfg.doc = doc;

  cfg.domain.dim = static_cast<int>(doc.get_int_or("domain", "dimension", 1));
  {
    auto bx = doc.get_list("domain", "box_x");
    if (bx.size() != 2) throw std::invalid_argument("config: box_x needs two numbers");
    cfg.domain.lo[0] = bx[0];
    cfg.domain.hi[0] = bx[1];
    if (cfg.domain.dim == 2) {
      auto by = doc.get_list("domain", "box_y");
      if (by.size() != 2) throw std::invalid_argument("config: box_y needs two numbers");
      cfg.domain.lo[1] = by[0];
      cfg.domain.hi[1] = by[1];
    }
    auto sp = doc.get_list("domain", "spacing");
    cfg.domain.dx[0] = sp[0];
    cfg.domain.dx[1] = cfg.domain.dim == 2 ? (sp.size() > 1 ? sp[1] : sp[0]) : 1.0;
    std::string mask = doc.get_or("domain", "mask", "full");
    if (mask != "full") {
      // reuse the domain text codec for the RLE form
      std::string text = "nlslab-domain v1\ndimension = " + std::to_string(cfg.domain.dim) +
                         "\nbox_x = " + format_double(cfg.domain.lo[0]) + " " +
                         format_double(cfg.domain.hi[0]) + "\n";
      if (cfg.domain.dim == 2)
        text += "box_y = " + format_double(cfg.domain.lo[1]) + " " +
                format_double(cfg.domain.hi[1]) + "\n";
      text += "spacing = " + format_double(cfg.domain.dx[0]);
      if (cfg.domain.dim == 2) text += " " + format_double(cfg.domain.dx[1]);
      text += "\nmask = " + mask + "\n";
      cfg.domain = domain_from_text(text);
    }
  }
  cfg.domain.validate();

  cfg.scheme = parse_scheme_config(doc);

  cfg.seed = static_cast<std::uint64_t>(doc.get_int_or("experiment", "seed", 0));
  cfg.workers = static_cast<int>(doc.get_int_or("experiment", "workers", 1));
  cfg.out_dir = doc.get_or("output", "directory", "out");
  cfg.ms = doc.get_list_or("sweep", "ms", {});
  cfg.rs = doc.get_list_or("sweep", "rs", {});
  cfg.ps = doc.get_list_or("sweep", "ps", {});
  cfg.scales = doc.get_list_or("sweep", "scales", {});
  cfg.full_matrix = doc.get_bool_or("sweep", "full_matrix", false);
  return cfg;
}

void ExperimentConfig::override_seed(std::uint64_t s) {
  seed = s;
  doc.set("experiment", "seed", std::to_string(s));
}

void ExperimentConfig::override_out_dir(const std::string& dir) {
  out_dir = dir;
  doc.set("output", "directory", dir);
}

void ExperimentConfig::override_workers(int w) {
  workers = w;
  doc.set("experiment", "workers", std::to_string(w));
}

std::uint64_t ExperimentConfig::digest() const { return fnv1a(doc.canonical_text()); }

GridPtr ExperimentConfig::build_grid_() const { return build_grid(domain); }

GridFunction ExperimentConfig::build_datum(const GridPtr& grid) const {
  return initial_datum_from_config(grid, doc);
}

namespace {
void write_effective_config(const ExperimentConfig& cfg) {
  atomic_write_file(cfg.out_dir + "/effective_config.txt", cfg.canonical_text());
}

// wall-clock provenance lives only here, never in data artifacts
void write_meta(const ExperimentConfig& cfg, const std::string& command) {
  auto now = std::chrono::system_clock::now().time_since_epoch();
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(now).count();
  std::ostringstream os;
  os << "command = " << command << "\n";
  os << "config_digest = " << hex64(cfg.digest()) << "\n";
  os << "unix_time = " << secs << "\n";
  atomic_write_file(cfg.out_dir + "/meta.txt", os.str());
}

std::string diagnostics_csv(const TrajectoryRecord& rec, bool log_family,
                            std::uint64_t digest) {
  std::ostringstream os;
  os << "# config_digest " << hex64(digest) << "\n";
  os << "t,mass,h1,energy,energy_m,linf";
  if (log_family) os << ",luxemburg";
  os << "\n";
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    os << format_double(rec.times[i]) << ',' << format_double(rec.mass[i]) << ','
       << format_double(rec.h1[i]) << ',' << format_double(rec.energy[i]) << ','
       << format_double(rec.energy_m[i]) << ',' << format_double(rec.linf[i]);
    if (log_family) os << ',' << format_double(rec.luxemburg[i]);
    os << "\n";
  }
  return os.str();
}

json drift_stats(const TrajectoryRecord& rec) {
  json j;
  if (rec.times.empty()) return j;
  double mass0 = rec.mass.front();
  double em0 = rec.energy_m.front();
  double h10 = rec.h1.front();
  double mass_rel = 0.0, em_abs = 0.0, h1_growth = 0.0;
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    if (mass0 > 0.0) mass_rel = std::max(mass_rel, std::abs(rec.mass[i] - mass0) / mass0);
    em_abs = std::max(em_abs, std::abs(rec.energy_m[i] - em0));
    if (h10 > 0.0) h1_growth = std::max(h1_growth, rec.h1[i] / h10 - 1.0);
  }
  j["mass_rel"] = mass_rel;
  j["energy_m_abs"] = em_abs;
  j["h1_max_growth"] = h1_growth;
  return j;
}
}  // namespace

std::optional<double> extinction_time(const TrajectoryRecord& rec, double threshold) {
  for (std::size_t i = 0; i < rec.times.size(); ++i)
    if (rec.linf[i] < threshold) return rec.times[i];
  return std::nullopt;
}

int cmd_run(const ExperimentConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  write_effective_config(cfg);
  write_meta(cfg, "run");
  const std::uint64_t digest = cfg.digest();

  GridPtr grid = cfg.build_grid_();
  GridFunction phi = cfg.build_datum(grid);
  TrajectoryRecord rec = evolve(cfg.scheme, phi);

  const bool log_family = cfg.scheme.family.kind == FamilyKind::Logarithmic;
  atomic_write_file(cfg.out_dir + "/diagnostics.csv",
                    diagnostics_csv(rec, log_family, digest));

  for (std::size_t s = 0; s < rec.snapshots.size(); ++s) {
    char name[64];
    std::snprintf(name, sizeof(name), "/snapshots/snap_%06zu.bin", s);
    write_snapshot(cfg.out_dir + name, rec.snapshots[s], digest);
  }
  write_snapshot(cfg.out_dir + "/final_state.bin", rec.final_state, digest);

  json summary;
  summary["config_digest"] = hex64(digest);
  summary["scheme"] = scheme_name(cfg.scheme.scheme);
  summary["family"] = family_name(cfg.scheme.family.kind);
  summary["m"] = cfg.scheme.m;
  summary["dt"] = cfg.scheme.dt;
  summary["t_final"] = rec.t_final;
  summary["steps"] = rec.times.empty() ? 0 : std::lround(rec.t_final / cfg.scheme.dt);
  summary["aborted"] = rec.aborted;
  if (rec.aborted) summary["abort_time"] = rec.abort_time;
  if (!rec.times.empty()) {
    json fin;
    fin["mass"] = rec.mass.back();
    fin["h1"] = rec.h1.back();
    fin["energy"] = rec.energy.back();
    fin["energy_m"] = rec.energy_m.back();
    fin["linf"] = rec.linf.back();
    if (log_family) fin["luxemburg"] = rec.luxemburg.back();
    summary["final"] = fin;
    summary["drift"] = drift_stats(rec);
  }
  if (cfg.scheme.family.has_damping_part()) {
    auto ext = extinction_time(rec);
    summary["extinction_time"] = ext ? json(*ext) : json(nullptr);
  }
  atomic_write_file(cfg.out_dir + "/summary.json", summary.dump(1) + "\n");
  return rec.aborted ? 3 : 0;
}

int cmd_cauchy(const ExperimentConfig& cfg) {
  if (cfg.ms.size() < 3)
    throw std::invalid_argument("cauchy: need at least 3 truncation levels in [sweep] ms");
  fs::create_directories(cfg.out_dir);
  write_effective_config(cfg);
  write_meta(cfg, "cauchy");
  const std::uint64_t digest = cfg.digest();

  GridPtr grid = cfg.build_grid_();
  GridFunction phi = cfg.build_datum(grid);
  SchemeConfig base = cfg.scheme;
  if (base.snapshot_stride <= 0) base.snapshot_stride = 1;

  FamilyRunResult family = run_family(base, phi, cfg.ms, cfg.workers);
  const bool log_family = base.family.kind == FamilyKind::Logarithmic;

  for (std::size_t i = 0; i < family.ms.size(); ++i) {
    if (!family.records[i]) continue;
    char name[64];
    std::snprintf(name, sizeof(name), "/member_m%g.csv", family.ms[i]);
    atomic_write_file(cfg.out_dir + name,
                      diagnostics_csv(*family.records[i], log_family, digest));
  }

  std::vector<const TrajectoryRecord*> recs;
  std::vector<double> ok_ms;
  for (std::size_t i = 0; i < family.ms.size(); ++i) {
    if (family.records[i]) {
      recs.push_back(&*family.records[i]);
      ok_ms.push_back(family.ms[i]);
    }
  }

  json summary;
  summary["config_digest"] = hex64(digest);
  summary["scheme"] = scheme_name(base.scheme);
  summary["ms"] = ok_ms;
  summary["ok"] = family.ok;
  {
    json errs = json::array();
    for (std::size_t i = 0; i < family.ms.size(); ++i)
      if (!family.errors[i].empty())
        errs.push_back({{"m", family.ms[i]}, {"error", family.errors[i]}});
    if (!errs.empty()) summary["errors"] = errs;
  }

  if (recs.size() >= 2) {
    auto dist = cauchy_distances(recs);
    const bool damped = base.family.has_damping_part();
    double phi_l2 = lp_norm(phi, 2.0);

    std::ostringstream os;
    os << "# config_digest " << hex64(digest) << "\n";
    os << "m,n,distance,bound_sq,pass\n";
    int violations = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      for (std::size_t j = i + 1; j < recs.size(); ++j) {
        os << format_double(ok_ms[i]) << ',' << format_double(ok_ms[j]) << ','
           << format_double(dist[i][j]);
        if (damped) {
          double bound = damped_cauchy_bound(base.t_final, grid->measure(), phi_l2,
                                             base.family.alpha, ok_ms[i], ok_ms[j]);
          bool pass = dist[i][j] * dist[i][j] <= bound;
          if (!pass) ++violations;
          os << ',' << format_double(bound) << ',' << (pass ? 1 : 0);
        } else {
          os << ",,";
        }
        os << "\n";
      }
    }
    atomic_write_file(cfg.out_dir + "/distances.csv", os.str());

    // dyadic rate along consecutive pairs
    std::vector<double> dy_m, dy_d;
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
      if (dist[i][i + 1] > 0.0) {
        dy_m.push_back(ok_ms[i]);
        dy_d.push_back(dist[i][i + 1]);
      }
    }
    json rates;
    rates["config_digest"] = hex64(digest);
    rates["pairs_m"] = dy_m;
    rates["pairs_distance"] = dy_d;
    if (dy_d.size() >= 3) {
      RateFit fit = fit_rate(dy_m, dy_d);
      rates["exponent"] = fit.exponent;
      rates["intercept"] = fit.intercept;
      rates["fit_residual"] = fit.fit_residual;
    } else {
      rates["exponent"] = nullptr;
      rates["reason"] = dy_d.empty() ? "all distances zero" : "fewer than 3 positive pairs";
    }
    atomic_write_file(cfg.out_dir + "/rates.json", rates.dump(1) + "\n");
    summary["bound_violations"] = damped ? json(violations) : json(nullptr);

    if (log_family && !cfg.rs.empty()) {
      json localized = json::array();
      for (double R : cfg.rs) {
        auto ldist = cauchy_distances(recs, R);
        json entry;
        entry["R"] = R;
        json rows = json::array();
        for (std::size_t i = 0; i + 1 < recs.size(); ++i)
          rows.push_back(ldist[i][i + 1]);
        entry["dyadic_distances"] = rows;
        localized.push_back(entry);
      }
      summary["localized"] = localized;
    }
  }

  atomic_write_file(cfg.out_dir + "/cauchy_summary.json", summary.dump(1) + "\n");
  return family.ok ? 0 : 3;
}

int cmd_verify(const std::string& suite, std::uint64_t samples, std::uint64_t seed,
               const std::string& out_dir, VerifySummary* out) {
  VerifySummary summary;
  summary.suite = suite;
  summary.samples = samples;
  summary.seed = seed;

  if (samples == 0) {
    CheckResult warn;
    warn.name = "vacuous";
    warn.note = "samples = 0: nothing checked";
    summary.checks.push_back(warn);
  } else if (suite == "pointwise") {
    summary.checks = verify_pointwise(samples, seed);
  } else if (suite == "yosida") {
    summary.checks = verify_yosida(samples, seed);
  } else if (suite == "norms") {
    summary.checks = verify_norms(samples, seed);
  } else if (suite == "all") {
    summary.checks = verify_pointwise(samples, seed);
    auto y = verify_yosida(samples, seed);
    summary.checks.insert(summary.checks.end(), y.begin(), y.end());
    auto n = verify_norms(samples, seed);
    summary.checks.insert(summary.checks.end(), n.begin(), n.end());
  } else {
    throw std::invalid_argument("verify: unknown suite " + suite +
                                " (expected pointwise|yosida|norms|all)");
  }

  for (const auto& c : summary.checks) summary.total_violations += c.violations;

  if (!out_dir.empty()) {
    json j;
    j["suite"] = summary.suite;
    j["samples"] = summary.samples;
    j["seed"] = summary.seed;
    j["total_violations"] = summary.total_violations;
    json checks = json::array();
    for (const auto& c : summary.checks) {
      json e;
      e["name"] = c.name;
      e["samples"] = c.samples;
      e["violations"] = c.violations;
      e["worst"] = c.worst;
      if (!c.note.empty()) e["note"] = c.note;
      checks.push_back(e);
    }
    j["checks"] = checks;
    fs::create_directories(out_dir);
    atomic_write_file(out_dir + "/verify_report.json", j.dump(1) + "\n");
  }
  if (out) *out = summary;
  return summary.total_violations == 0 ? 0 : 1;
}

std::string cmd_report(const std::string& out_dir) {
  std::ostringstream os;
  os << "artifacts in " << out_dir << "\n";
  bool any = false;
  for (const char* name : {"summary.json", "cauchy_summary.json", "rates.json",
                           "verify_report.json"}) {
    fs::path p = fs::path(out_dir) / name;
    if (!fs::exists(p)) continue;
    any = true;
    os << "\n== " << name << "\n";
    try {
      json j = json::parse(read_file(p.string()));
      os << j.dump(1) << "\n";
    } catch (const std::exception& e) {
      os << "  (unreadable: " << e.what() << ")\n";
    }
  }
  if (!any) os << "  (no summary artifacts found)\n";
  return os.str();
}

}  // namespace nlslab
