/* nlslab — approximation schemes for nonlinear Schrodinger equations on
 * masked grids, exposed as a C API over the C++ core. All functions return a
 * status code; nlslab_last_error() describes the most recent failure on the
 * calling thread. Handles are opaque and must be released with the matching
 * _free function. */

#ifndef NLSLAB_H
#define NLSLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlslab_status {
  NLSLAB_OK = 0,
  NLSLAB_EINVAL = 1,   /* bad argument or config */
  NLSLAB_EIO = 2,      /* filesystem failure */
  NLSLAB_ESOLVER = 3,  /* iterative solver did not converge */
  NLSLAB_EABORTED = 4, /* evolution hit a non-finite field */
  NLSLAB_ERUNTIME = 5  /* anything else */
} nlslab_status;

const char* nlslab_status_name(nlslab_status status);
const char* nlslab_last_error(void); /* thread-local, valid until next call */
const char* nlslab_version(void);

typedef struct nlslab_grid nlslab_grid;
typedef struct nlslab_field nlslab_field;
typedef struct nlslab_yosida nlslab_yosida;
typedef struct nlslab_trajectory nlslab_trajectory;
typedef struct nlslab_experiment nlslab_experiment;

/* ---- grids ---- */

/* dim is 1 or 2; lo/hi/dx point to dim entries */
nlslab_status nlslab_grid_box(int dim, const double* lo, const double* hi,
                              const double* dx, nlslab_grid** out);
/* node_mask covers all lattice nodes row-major (x fastest), may be NULL for
 * a full box; border nodes are exterior regardless */
nlslab_status nlslab_grid_masked(int dim, const double* lo, const double* hi,
                                 const double* dx, const uint8_t* node_mask,
                                 size_t mask_len, nlslab_grid** out);
nlslab_status nlslab_grid_from_text(const char* text, nlslab_grid** out);
nlslab_status nlslab_grid_to_text(const nlslab_grid* grid, char** out_text);
int64_t nlslab_grid_interior_count(const nlslab_grid* grid);
double nlslab_grid_cell_measure(const nlslab_grid* grid);
uint64_t nlslab_grid_digest(const nlslab_grid* grid);
void nlslab_grid_free(nlslab_grid* grid);

/* ---- fields ---- */

nlslab_status nlslab_field_zeros(const nlslab_grid* grid, nlslab_field** out);
/* re/im arrays of length interior_count; im may be NULL for a real field */
nlslab_status nlslab_field_set(nlslab_field* field, const double* re, const double* im);
nlslab_status nlslab_field_get(const nlslab_field* field, double* re, double* im);
nlslab_status nlslab_field_clone(const nlslab_field* field, nlslab_field** out);
void nlslab_field_free(nlslab_field* field);

/* kind: "l2" | "lp" (uses p) | "linf" | "h1" | "h1semi" | "luxemburg" */
nlslab_status nlslab_field_norm(const nlslab_field* field, const char* kind, double p,
                                double* out);
nlslab_status nlslab_laplacian_apply(const nlslab_field* field, nlslab_field** out);

nlslab_status nlslab_snapshot_write(const char* path, const nlslab_field* field,
                                    uint64_t config_digest);
nlslab_status nlslab_snapshot_read(const char* path, const nlslab_grid* grid,
                                   nlslab_field** out);

/* ---- Yosida regularization ---- */

/* solver: "auto" | "fst" | "cg" | "dense" */
nlslab_status nlslab_yosida_create(const nlslab_grid* grid, double m,
                                   const char* solver, nlslab_yosida** out);
nlslab_status nlslab_yosida_apply(const nlslab_yosida* op, const nlslab_field* f,
                                  nlslab_field** out);
void nlslab_yosida_free(nlslab_yosida* op);

/* ---- evolution ---- */

/* scheme_text is the [scheme] section of a config document, e.g.
 *   "[scheme]\nkind = damped\nalpha = 0.5\nm = 16\ndt = 1e-3\nt_final = 1\n" */
nlslab_status nlslab_evolve(const char* scheme_text, const nlslab_field* phi,
                            nlslab_trajectory** out);
int64_t nlslab_trajectory_length(const nlslab_trajectory* rec);
/* column: "t" | "mass" | "h1" | "energy" | "energy_m" | "linf" | "luxemburg";
 * out must hold nlslab_trajectory_length doubles */
nlslab_status nlslab_trajectory_series(const nlslab_trajectory* rec, const char* column,
                                       double* out);
nlslab_status nlslab_trajectory_final(const nlslab_trajectory* rec,
                                      const nlslab_grid* grid, nlslab_field** out);
int nlslab_trajectory_aborted(const nlslab_trajectory* rec);
void nlslab_trajectory_free(nlslab_trajectory* rec);

/* ---- experiment orchestration (what the CLI drives) ---- */

nlslab_status nlslab_experiment_load(const char* config_path, nlslab_experiment** out);
nlslab_status nlslab_experiment_set_seed(nlslab_experiment* exp, uint64_t seed);
nlslab_status nlslab_experiment_set_out_dir(nlslab_experiment* exp, const char* dir);
nlslab_status nlslab_experiment_set_workers(nlslab_experiment* exp, int workers);
uint64_t nlslab_experiment_digest(const nlslab_experiment* exp);
/* exit_code receives the command's exit status (0 ok, 3 partial results) */
nlslab_status nlslab_experiment_run(nlslab_experiment* exp, int* exit_code);
nlslab_status nlslab_experiment_cauchy(nlslab_experiment* exp, int* exit_code);
void nlslab_experiment_free(nlslab_experiment* exp);

/* suite: "pointwise" | "yosida" | "norms" | "all". Writes
 * verify_report.json under out_dir when out_dir is non-NULL. exit_code is 0
 * when every property held. */
nlslab_status nlslab_verify(const char* suite, uint64_t samples, uint64_t seed,
                            const char* out_dir, int* exit_code,
                            uint64_t* violations);

/* renders a human-readable summary of the artifacts in a directory */
nlslab_status nlslab_report(const char* out_dir, char** out_text);

void nlslab_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* NLSLAB_H */
