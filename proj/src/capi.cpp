#include "nlslab.h"

#include <cstring>
#include <string>

#include "evolution.hpp"
#include "experiment.hpp"
#include "grid.hpp"
#include "io_util.hpp"
#include "kvdoc.hpp"
#include "linear_solvers.hpp"
#include "resolvent.hpp"

using namespace nlslab;

namespace {
thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// every entry point funnels exceptions into status codes here
template <class Fn>
nlslab_status guarded(Fn&& fn) {
  try {
    fn();
    return NLSLAB_OK;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return NLSLAB_EINVAL;
  } catch (const SolverError& e) {
    set_error(e.what());
    return NLSLAB_ESOLVER;
  } catch (const std::ios_base::failure& e) {
    set_error(e.what());
    return NLSLAB_EIO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return NLSLAB_ERUNTIME;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}
}  // namespace

struct nlslab_grid {
  GridPtr grid;
};
struct nlslab_field {
  GridFunction fn;
};
struct nlslab_yosida {
  std::shared_ptr<const YosidaOperator> op;
};
struct nlslab_trajectory {
  TrajectoryRecord rec;
};
struct nlslab_experiment {
  ExperimentConfig cfg;
};

extern "C" {

const char* nlslab_status_name(nlslab_status status) {
  switch (status) {
    case NLSLAB_OK: return "ok";
    case NLSLAB_EINVAL: return "invalid argument";
    case NLSLAB_EIO: return "io error";
    case NLSLAB_ESOLVER: return "solver failure";
    case NLSLAB_EABORTED: return "evolution aborted";
    case NLSLAB_ERUNTIME: return "runtime error";
  }
  return "unknown";
}

const char* nlslab_last_error(void) { return g_last_error.c_str(); }

const char* nlslab_version(void) { return "nlslab 1.0.0"; }

nlslab_status nlslab_grid_box(int dim, const double* lo, const double* hi,
                              const double* dx, nlslab_grid** out) {
  return nlslab_grid_masked(dim, lo, hi, dx, nullptr, 0, out);
}

nlslab_status nlslab_grid_masked(int dim, const double* lo, const double* hi,
                                 const double* dx, const uint8_t* node_mask,
                                 size_t mask_len, nlslab_grid** out) {
  return guarded([&] {
    if (!lo || !hi || !dx || !out) throw std::invalid_argument("null argument");
    DomainSpec spec;
    spec.dim = dim;
    for (int a = 0; a < dim; ++a) {
      spec.lo[a] = lo[a];
      spec.hi[a] = hi[a];
      spec.dx[a] = dx[a];
    }
    if (dim == 1) spec.dx[1] = 1.0;
    if (node_mask) spec.mask.assign(node_mask, node_mask + mask_len);
    *out = new nlslab_grid{build_grid(spec)};
  });
}

nlslab_status nlslab_grid_from_text(const char* text, nlslab_grid** out) {
  return guarded([&] {
    if (!text || !out) throw std::invalid_argument("null argument");
    *out = new nlslab_grid{build_grid(domain_from_text(text))};
  });
}

nlslab_status nlslab_grid_to_text(const nlslab_grid* grid, char** out_text) {
  return guarded([&] {
    if (!grid || !out_text) throw std::invalid_argument("null argument");
    *out_text = dup_string(domain_to_text(grid->grid->spec()));
  });
}

int64_t nlslab_grid_interior_count(const nlslab_grid* grid) {
  return grid ? grid->grid->interior_count() : -1;
}

double nlslab_grid_cell_measure(const nlslab_grid* grid) {
  return grid ? grid->grid->cell_measure() : 0.0;
}

uint64_t nlslab_grid_digest(const nlslab_grid* grid) {
  return grid ? grid->grid->digest() : 0;
}

void nlslab_grid_free(nlslab_grid* grid) { delete grid; }

nlslab_status nlslab_field_zeros(const nlslab_grid* grid, nlslab_field** out) {
  return guarded([&] {
    if (!grid || !out) throw std::invalid_argument("null argument");
    *out = new nlslab_field{GridFunction(grid->grid)};
  });
}

nlslab_status nlslab_field_set(nlslab_field* field, const double* re, const double* im) {
  return guarded([&] {
    if (!field || !re) throw std::invalid_argument("null argument");
    auto& v = field->fn.v;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = {re[i], im ? im[i] : 0.0};
  });
}

nlslab_status nlslab_field_get(const nlslab_field* field, double* re, double* im) {
  return guarded([&] {
    if (!field) throw std::invalid_argument("null argument");
    const auto& v = field->fn.v;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (re) re[i] = v[i].real();
      if (im) im[i] = v[i].imag();
    }
  });
}

nlslab_status nlslab_field_clone(const nlslab_field* field, nlslab_field** out) {
  return guarded([&] {
    if (!field || !out) throw std::invalid_argument("null argument");
    *out = new nlslab_field{field->fn};
  });
}

void nlslab_field_free(nlslab_field* field) { delete field; }

nlslab_status nlslab_field_norm(const nlslab_field* field, const char* kind, double p,
                                double* out) {
  return guarded([&] {
    if (!field || !kind || !out) throw std::invalid_argument("null argument");
    std::string k = kind;
    if (k == "l2") *out = lp_norm(field->fn, 2.0);
    else if (k == "lp") *out = lp_norm(field->fn, p);
    else if (k == "linf") *out = linf_norm(field->fn);
    else if (k == "h1") *out = h1_norm(field->fn);
    else if (k == "h1semi") *out = h1_seminorm(field->fn);
    else if (k == "luxemburg") *out = luxemburg_norm(field->fn);
    else throw std::invalid_argument("unknown norm kind " + k);
  });
}

nlslab_status nlslab_laplacian_apply(const nlslab_field* field, nlslab_field** out) {
  return guarded([&] {
    if (!field || !out) throw std::invalid_argument("null argument");
    *out = new nlslab_field{apply_laplacian(field->fn)};
  });
}

nlslab_status nlslab_snapshot_write(const char* path, const nlslab_field* field,
                                    uint64_t config_digest) {
  return guarded([&] {
    if (!path || !field) throw std::invalid_argument("null argument");
    write_snapshot(path, field->fn, config_digest);
  });
}

nlslab_status nlslab_snapshot_read(const char* path, const nlslab_grid* grid,
                                   nlslab_field** out) {
  return guarded([&] {
    if (!path || !grid || !out) throw std::invalid_argument("null argument");
    *out = new nlslab_field{read_snapshot(path, grid->grid)};
  });
}

nlslab_status nlslab_yosida_create(const nlslab_grid* grid, double m,
                                   const char* solver, nlslab_yosida** out) {
  return guarded([&] {
    if (!grid || !out) throw std::invalid_argument("null argument");
    std::optional<ResolventSolver> s;
    std::string name = solver ? solver : "auto";
    if (name == "fst") s = ResolventSolver::FastSineTransform;
    else if (name == "cg") s = ResolventSolver::ConjugateGradient;
    else if (name == "dense") s = ResolventSolver::DenseDirect;
    else if (name != "auto") throw std::invalid_argument("unknown solver " + name);
    *out = new nlslab_yosida{std::make_shared<YosidaOperator>(grid->grid, m, s)};
  });
}

nlslab_status nlslab_yosida_apply(const nlslab_yosida* op, const nlslab_field* f,
                                  nlslab_field** out) {
  return guarded([&] {
    if (!op || !f || !out) throw std::invalid_argument("null argument");
    *out = new nlslab_field{op->op->apply(f->fn)};
  });
}

void nlslab_yosida_free(nlslab_yosida* op) { delete op; }

nlslab_status nlslab_evolve(const char* scheme_text, const nlslab_field* phi,
                            nlslab_trajectory** out) {
  nlslab_status st = guarded([&] {
    if (!scheme_text || !phi || !out) throw std::invalid_argument("null argument");
    SchemeConfig scheme = parse_scheme_config(KvDoc::parse(scheme_text));
    *out = new nlslab_trajectory{evolve(scheme, phi->fn)};
  });
  if (st == NLSLAB_OK && out && *out && (*out)->rec.aborted) {
    set_error("evolution aborted on a non-finite field; partial record returned");
    return NLSLAB_EABORTED;
  }
  return st;
}

int64_t nlslab_trajectory_length(const nlslab_trajectory* rec) {
  return rec ? static_cast<int64_t>(rec->rec.times.size()) : -1;
}

nlslab_status nlslab_trajectory_series(const nlslab_trajectory* rec, const char* column,
                                       double* out) {
  return guarded([&] {
    if (!rec || !column || !out) throw std::invalid_argument("null argument");
    std::string c = column;
    const std::vector<double>* src = nullptr;
    if (c == "t") src = &rec->rec.times;
    else if (c == "mass") src = &rec->rec.mass;
    else if (c == "h1") src = &rec->rec.h1;
    else if (c == "energy") src = &rec->rec.energy;
    else if (c == "energy_m") src = &rec->rec.energy_m;
    else if (c == "linf") src = &rec->rec.linf;
    else if (c == "luxemburg") src = &rec->rec.luxemburg;
    else throw std::invalid_argument("unknown column " + c);
    if (src->size() != rec->rec.times.size() && c == "luxemburg")
      throw std::invalid_argument("luxemburg series is only recorded for the log family");
    std::memcpy(out, src->data(), src->size() * sizeof(double));
  });
}

nlslab_status nlslab_trajectory_final(const nlslab_trajectory* rec,
                                      const nlslab_grid* grid, nlslab_field** out) {
  return guarded([&] {
    if (!rec || !grid || !out) throw std::invalid_argument("null argument");
    if (grid->grid->digest() != rec->rec.final_state.grid->digest())
      throw std::invalid_argument("trajectory belongs to a different grid");
    GridFunction f = rec->rec.final_state;
    f.grid = grid->grid;
    *out = new nlslab_field{std::move(f)};
  });
}

int nlslab_trajectory_aborted(const nlslab_trajectory* rec) {
  return rec && rec->rec.aborted ? 1 : 0;
}

void nlslab_trajectory_free(nlslab_trajectory* rec) { delete rec; }

nlslab_status nlslab_experiment_load(const char* config_path, nlslab_experiment** out) {
  return guarded([&] {
    if (!config_path || !out) throw std::invalid_argument("null argument");
    *out = new nlslab_experiment{ExperimentConfig::load(config_path)};
  });
}

nlslab_status nlslab_experiment_set_seed(nlslab_experiment* exp, uint64_t seed) {
  return guarded([&] {
    if (!exp) throw std::invalid_argument("null argument");
    exp->cfg.override_seed(seed);
  });
}

nlslab_status nlslab_experiment_set_out_dir(nlslab_experiment* exp, const char* dir) {
  return guarded([&] {
    if (!exp || !dir) throw std::invalid_argument("null argument");
    exp->cfg.override_out_dir(dir);
  });
}

nlslab_status nlslab_experiment_set_workers(nlslab_experiment* exp, int workers) {
  return guarded([&] {
    if (!exp || workers < 1) throw std::invalid_argument("workers must be >= 1");
    exp->cfg.override_workers(workers);
  });
}

uint64_t nlslab_experiment_digest(const nlslab_experiment* exp) {
  return exp ? exp->cfg.digest() : 0;
}

nlslab_status nlslab_experiment_run(nlslab_experiment* exp, int* exit_code) {
  return guarded([&] {
    if (!exp) throw std::invalid_argument("null argument");
    int rc = cmd_run(exp->cfg);
    if (exit_code) *exit_code = rc;
  });
}

nlslab_status nlslab_experiment_cauchy(nlslab_experiment* exp, int* exit_code) {
  return guarded([&] {
    if (!exp) throw std::invalid_argument("null argument");
    int rc = cmd_cauchy(exp->cfg);
    if (exit_code) *exit_code = rc;
  });
}

void nlslab_experiment_free(nlslab_experiment* exp) { delete exp; }

nlslab_status nlslab_verify(const char* suite, uint64_t samples, uint64_t seed,
                            const char* out_dir, int* exit_code, uint64_t* violations) {
  return guarded([&] {
    if (!suite) throw std::invalid_argument("null argument");
    VerifySummary summary;
    int rc = cmd_verify(suite, samples, seed, out_dir ? out_dir : "", &summary);
    if (exit_code) *exit_code = rc;
    if (violations) *violations = summary.total_violations;
  });
}

nlslab_status nlslab_report(const char* out_dir, char** out_text) {
  return guarded([&] {
    if (!out_dir || !out_text) throw std::invalid_argument("null argument");
    *out_text = dup_string(cmd_report(out_dir));
  });
}

void nlslab_string_free(char* text) { delete[] text; }

}  // extern "C"
