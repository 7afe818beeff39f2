#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convergence.hpp"
#include "evolution.hpp"
#include "grid.hpp"
#include "kvdoc.hpp"

namespace nlslab {

// A fully resolved experiment: domain + initial datum + scheme + sweep lists.
// The effective document (after CLI overrides) is canonicalized, digested and
// echoed into every artifact, so any output can be traced to the exact
// configuration that produced it.
struct ExperimentConfig {
  KvDoc doc;
  DomainSpec domain;
  SchemeConfig scheme;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out_dir = "out";
  std::vector<double> ms;      // truncation sweep
  std::vector<double> rs;      // localization radii
  std::vector<double> ps;      // Yudovich exponents
  std::vector<double> scales;  // dependence-probe perturbation scales
  bool full_matrix = false;

  static ExperimentConfig load(const std::string& path);
  static ExperimentConfig from_doc(const KvDoc& doc);

  void override_seed(std::uint64_t s);
  void override_out_dir(const std::string& dir);
  void override_workers(int w);

  std::string canonical_text() const { return doc.canonical_text(); }
  std::uint64_t digest() const;

  GridPtr build_grid_() const;
  GridFunction build_datum(const GridPtr& grid) const;
};

// Single evolution; writes diagnostics.csv, summary.json, snapshots/ and the
// effective config. Returns 0 on success, 3 if the run aborted (partial
// artifacts are kept).
int cmd_run(const ExperimentConfig& config);

// Family sweep; writes member diagnostics, distances.csv, rates.json and
// cauchy_summary.json. Returns 0 on success, 3 on member failure (partial
// artifacts are kept).
int cmd_cauchy(const ExperimentConfig& config);

struct CheckResult {
  std::string name;
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  double worst = 0.0;  // worst margin seen (check-specific scale, <= 1 is ok)
  std::string note;
};

struct VerifySummary {
  std::string suite;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::uint64_t total_violations = 0;
};

// suite in {pointwise, yosida, norms, all}; samples = 0 runs a vacuous pass
// with a warning note. Writes verify_report.json when out_dir is non-empty.
int cmd_verify(const std::string& suite, std::uint64_t samples, std::uint64_t seed,
               const std::string& out_dir, VerifySummary* summary = nullptr);

// human-readable digest of the artifacts found in a directory
std::string cmd_report(const std::string& out_dir);

// first recorded time with ||u||_inf below the extinction threshold, if any
std::optional<double> extinction_time(const TrajectoryRecord& rec,
                                      double threshold = 1e-12);

// parses just the [scheme] section of a document
SchemeConfig parse_scheme_config(const KvDoc& doc);

}  // namespace nlslab
