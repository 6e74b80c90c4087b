#ifndef BSM_BSM_H
#define BSM_BSM_H

/* C interface to the binary stochastic mixture slab solver.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * destroy function. Every call returning bsm_status leaves a message for
 * bsm_last_error() on failure. The message is kept per thread. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(BSM_BUILDING_LIBRARY)
#define BSM_API __attribute__((visibility("default")))
#else
#define BSM_API
#endif

typedef enum bsm_status {
  BSM_OK = 0,
  BSM_ERR_INVALID = 3,   /* bad argument or input data */
  BSM_ERR_NUMERICAL = 4, /* singular system, NaN/Inf iterate */
  BSM_ERR_IO = 5,
  BSM_ERR_INTERNAL = 6
} bsm_status;

typedef enum bsm_algorithm {
  BSM_ALGORITHM_MULTILEVEL = 0,
  BSM_ALGORITHM_SOURCE_ITERATION = 1
} bsm_algorithm;

typedef struct bsm_problem bsm_problem;
typedef struct bsm_result bsm_result;

typedef struct bsm_options {
  double epsilon;
  int max_iterations;
  int n_max;
  int rho_window;
} bsm_options;

typedef struct bsm_summary {
  int converged;
  int iterations;
  double rho_estimate; /* 0 when no ratio was recorded */
  int rho_samples;
  int n_cells;
  int n_max;
  bsm_algorithm algorithm;
} bsm_summary;

typedef struct bsm_history_row {
  int s;
  double delta_phi;
  double delta_phi_mat[2];
  double rho;
  int rho_defined;
} bsm_history_row;

/* Cell averages at one cell. */
typedef struct bsm_flux_row {
  double x_center;
  double phi_ens;
  double phi_mat[2];
  double current_ens;
} bsm_flux_row;

BSM_API const char* bsm_version(void);
BSM_API const char* bsm_last_error(void);
BSM_API const char* bsm_status_string(bsm_status status);

BSM_API int bsm_test_count(void);
BSM_API const char* bsm_test_name(int index); /* NULL when out of range */

BSM_API void bsm_options_default(bsm_options* options);

/* n_cells <= 0 and n_per_half <= 0 select the defaults (100 cells for
 * catalog tests or the file's own cell count, 4 nodes per half-range). */
BSM_API bsm_status bsm_problem_from_test(const char* test_id, int n_cells,
                                         int n_per_half, bsm_problem** out);
BSM_API bsm_status bsm_problem_from_file(const char* path, int n_cells,
                                         int n_per_half, bsm_problem** out);
BSM_API bsm_status bsm_problem_from_text(const char* text, int n_cells,
                                         int n_per_half, bsm_problem** out);
BSM_API void bsm_problem_destroy(bsm_problem* problem);
BSM_API const char* bsm_problem_name(const bsm_problem* problem);
BSM_API int bsm_problem_cells(const bsm_problem* problem);

/* A run that stops at max_iterations is still BSM_OK; check
 * bsm_summary.converged. */
BSM_API bsm_status bsm_solve(const bsm_problem* problem,
                             bsm_algorithm algorithm,
                             const bsm_options* options, bsm_result** out);
BSM_API void bsm_result_destroy(bsm_result* result);

BSM_API bsm_status bsm_result_summary(const bsm_result* result,
                                      bsm_summary* out);
BSM_API int bsm_result_history_length(const bsm_result* result);
BSM_API bsm_status bsm_result_history_row(const bsm_result* result, int index,
                                          bsm_history_row* out);
BSM_API int bsm_result_cell_count(const bsm_result* result);
BSM_API bsm_status bsm_result_flux_row(const bsm_result* result, int cell,
                                       bsm_flux_row* out);

#ifdef __cplusplus
}
#endif

#endif /* BSM_BSM_H */
