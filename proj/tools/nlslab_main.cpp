// Command-line front end. Everything goes through the shared-library C API;
// this translation unit deliberately includes no core headers.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <string>

#include "nlslab.h"

namespace {

int fail(nlslab_status st, const char* what) {
  std::fprintf(stderr, "nlslab %s: %s (%s)\n", what, nlslab_last_error(),
               nlslab_status_name(st));
  return 2;
}

int with_experiment(const std::string& config, std::uint64_t seed, bool seed_set,
                    const std::string& out, int workers, bool is_cauchy) {
  nlslab_experiment* exp = nullptr;
  nlslab_status st = nlslab_experiment_load(config.c_str(), &exp);
  if (st != NLSLAB_OK) return fail(st, "load");
  if (seed_set) nlslab_experiment_set_seed(exp, seed);
  if (!out.empty()) nlslab_experiment_set_out_dir(exp, out.c_str());
  if (workers > 0) nlslab_experiment_set_workers(exp, workers);

  int exit_code = 0;
  st = is_cauchy ? nlslab_experiment_cauchy(exp, &exit_code)
                 : nlslab_experiment_run(exp, &exit_code);
  if (st != NLSLAB_OK) {
    nlslab_experiment_free(exp);
    return fail(st, is_cauchy ? "cauchy" : "run");
  }
  std::printf("config digest %016llx, exit %d\n",
              static_cast<unsigned long long>(nlslab_experiment_digest(exp)), exit_code);
  nlslab_experiment_free(exp);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlslab: approximation-scheme laboratory for NLS on masked grids"};
  app.require_subcommand(1);

  std::string config, out, suite = "all";
  std::uint64_t seed = 0, samples = 1000000;
  int workers = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* copt = cmd->add_option("--config", config, "experiment config file");
    if (needs_config) copt->required();
    cmd->add_option("--seed", seed, "override the config seed")
        ->each([&](const std::string&) { seed_set = true; });
    cmd->add_option("--out", out, "override the output directory");
    cmd->add_option("--workers", workers, "worker threads for sweeps");
  };

  auto* vrf = app.add_subcommand("verify", "run a property-verification suite");
  vrf->add_option("--suite", suite, "pointwise | yosida | norms | all");
  vrf->add_option("--samples", samples, "sample count per check");
  vrf->add_option("--seed", seed, "RNG seed");
  vrf->add_option("--out", out, "directory for verify_report.json");

  auto* run = app.add_subcommand("run", "integrate one configuration");
  add_common(run, true);

  auto* cau = app.add_subcommand("cauchy", "run a truncation family and measure distances");
  add_common(cau, true);

  auto* rep = app.add_subcommand("report", "summarize artifacts in a directory");
  rep->add_option("--out", out, "artifact directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (vrf->parsed()) {
    int exit_code = 0;
    std::uint64_t violations = 0;
    nlslab_status st = nlslab_verify(suite.c_str(), samples, seed,
                                     out.empty() ? nullptr : out.c_str(), &exit_code,
                                     &violations);
    if (st != NLSLAB_OK) return fail(st, "verify");
    std::printf("suite %s: %llu violation(s)\n", suite.c_str(),
                static_cast<unsigned long long>(violations));
    return exit_code;
  }
  if (run->parsed()) return with_experiment(config, seed, seed_set, out, workers, false);
  if (cau->parsed()) return with_experiment(config, seed, seed_set, out, workers, true);
  if (rep->parsed()) {
    char* text = nullptr;
    nlslab_status st = nlslab_report(out.c_str(), &text);
    if (st != NLSLAB_OK) return fail(st, "report");
    std::fputs(text, stdout);
    nlslab_string_free(text);
    return 0;
  }
  return 2;
}
