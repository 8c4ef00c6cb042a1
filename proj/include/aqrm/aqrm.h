/*
 * aqrm.h: C interface to the anisotropic quantum Rabi model engine.
 *
 * Objects are opaque handles created by aqrm_*_create / aqrm_*_run and
 * released with the matching aqrm_*_destroy. Every fallible call returns an
 * aqrm_status; on failure aqrm_last_error() holds a message for the calling
 * thread. Energies are in units where Omega is given explicitly (Omega = 1 is
 * the convention); couplings in the *_gs variants are in units of
 * g_s = sqrt(omega * Omega) / 2.
 */
#ifndef AQRM_H
#define AQRM_H

#include <stddef.h>

#if defined(_WIN32)
#  define AQRM_API __declspec(dllexport)
#else
#  define AQRM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aqrm_status {
    AQRM_OK = 0,
    AQRM_ERR_INVALID_ARGUMENT = 1, /* null handle, bad index, bad enum */
    AQRM_ERR_CONFIG = 2,           /* rejected physical parameters or truncation */
    AQRM_ERR_SOLVER = 3,           /* eigensolver did not converge */
    AQRM_ERR_IO = 4,               /* file could not be read or written */
    AQRM_ERR_BUFFER_TOO_SMALL = 5, /* output buffer shorter than required */
    AQRM_ERR_INTERNAL = 6
} aqrm_status;

AQRM_API const char* aqrm_version(void);
AQRM_API const char* aqrm_status_string(aqrm_status status);
/* Message of the last failed call on this thread ("" if none). */
AQRM_API const char* aqrm_last_error(void);

/* ---- model ------------------------------------------------------------ */

typedef struct aqrm_model aqrm_model;

typedef struct aqrm_params {
    double omega, Omega, g, lambda;
    double g_y, g_z, g_s;
    double gz_prime, gy_prime;
    double eps0_y, potential_offset;
} aqrm_params;

typedef enum aqrm_truncation_policy {
    AQRM_TRUNCATION_ADAPTIVE = 0,
    AQRM_TRUNCATION_FIXED = 1
} aqrm_truncation_policy;

AQRM_API aqrm_status aqrm_model_create(double omega, double Omega, double g, double lambda,
                                       int allow_any_lambda, aqrm_model** out);
AQRM_API aqrm_status aqrm_model_create_gs(double omega, double Omega, double g_over_gs, double lambda,
                                          int allow_any_lambda, aqrm_model** out);
AQRM_API void aqrm_model_destroy(aqrm_model* model);

AQRM_API aqrm_status aqrm_model_params(const aqrm_model* model, aqrm_params* out);
/* Adaptive: n_max is a lower bound raised to the floor. Fixed: used as given;
 * below the floor it is refused unless allow_below_floor is nonzero. */
AQRM_API aqrm_status aqrm_model_set_truncation(aqrm_model* model, size_t n_max, aqrm_truncation_policy policy,
                                               int allow_below_floor);
AQRM_API aqrm_status aqrm_model_n_max(const aqrm_model* model, size_t* out);
AQRM_API aqrm_status aqrm_model_dim(const aqrm_model* model, size_t* out);
/* Hamiltonian element in the |n, s=sigma_x> basis, index = 2n + (1-s)/2. */
AQRM_API aqrm_status aqrm_model_hamiltonian_element(const aqrm_model* model, size_t row, size_t col, double* out);

/* ---- eigenpairs --------------------------------------------------------- */

typedef enum aqrm_sector { AQRM_SECTOR_FULL = 0, AQRM_SECTOR_EVEN = 1, AQRM_SECTOR_ODD = 2 } aqrm_sector;

typedef struct aqrm_solution aqrm_solution;

AQRM_API aqrm_status aqrm_solve(const aqrm_model* model, size_t k, aqrm_sector sector, aqrm_solution** out);
AQRM_API void aqrm_solution_destroy(aqrm_solution* solution);
AQRM_API aqrm_status aqrm_solution_count(const aqrm_solution* solution, size_t* out);
AQRM_API aqrm_status aqrm_solution_dim(const aqrm_solution* solution, size_t* out);
AQRM_API aqrm_status aqrm_solution_energy(const aqrm_solution* solution, size_t i, double* out);
AQRM_API aqrm_status aqrm_solution_residual(const aqrm_solution* solution, size_t i, double* out);
/* Copies eigenvector i (length dim) into buffer. */
AQRM_API aqrm_status aqrm_solution_vector(const aqrm_solution* solution, size_t i, double* buffer, size_t length);

typedef struct aqrm_low_spectrum {
    double e0, e1, gap;
    double even_e0, even_e1, odd_e0, odd_e1;
    double splitting;       /* even_e0 - odd_e0, precision-refined */
    int ground_parity;      /* +1 or -1 */
    int degenerate;         /* splitting unresolved even in quad precision */
    int quad_precision;     /* splitting came from the quad-precision path */
    size_t n_max;
} aqrm_low_spectrum;

AQRM_API aqrm_status aqrm_low_spectrum_compute(const aqrm_model* model, aqrm_low_spectrum* out);

/* ---- observables -------------------------------------------------------- */

typedef struct aqrm_observables {
    double a_dag_a_dag;
    double a_norm;          /* NaN when a_norm_valid == 0 (g = 0) */
    int a_norm_valid;
    double sigma_x, parity, p_x, p_sigma;
    double excitation, excitation_variance;
    double duality_re, duality_im, duality_mod;
    double x2, p2, photon_number;
} aqrm_observables;

AQRM_API aqrm_status aqrm_ground_observables(const aqrm_model* model, aqrm_observables* out);
AQRM_API aqrm_status aqrm_solution_observables(const aqrm_solution* solution, size_t i, aqrm_observables* out);

/* ---- real space --------------------------------------------------------- */

typedef struct aqrm_wave aqrm_wave;

typedef enum aqrm_component { AQRM_COMPONENT_PLUS = 0, AQRM_COMPONENT_MINUS = 1 } aqrm_component;

/* Ground-state spinor on a grid. half_width <= 0 selects the default
 * max(gz', gy') + 8; step <= 0 selects 0.02. With dual != 0 the state is first
 * mapped by the x-p duality transform. */
AQRM_API aqrm_status aqrm_ground_wave(const aqrm_model* model, double half_width, double step, int dual,
                                      aqrm_wave** out);
AQRM_API void aqrm_wave_destroy(aqrm_wave* wave);
AQRM_API aqrm_status aqrm_wave_size(const aqrm_wave* wave, size_t* out);
/* Pointers stay valid until the wave is destroyed. */
AQRM_API aqrm_status aqrm_wave_data(const aqrm_wave* wave, const double** x, const double** psi_plus,
                                    const double** psi_minus);
AQRM_API aqrm_status aqrm_wave_norm(const aqrm_wave* wave, double* out);
AQRM_API aqrm_status aqrm_wave_count_zeros(const aqrm_wave* wave, aqrm_component component, double rel_threshold,
                                           int* n_z, int* ambiguous);
/* Writes x, psi_plus, psi_minus with `#` metadata lines (parameters,
 * truncation, parity). */
AQRM_API aqrm_status aqrm_wave_write_csv(const aqrm_wave* wave, const char* path);

/* |<U_D psi_a | psi_b>| between the ground states of two models. */
AQRM_API aqrm_status aqrm_dual_fidelity(const aqrm_model* a, const aqrm_model* b, double* out);

/* ---- boundaries --------------------------------------------------------- */

AQRM_API double aqrm_g_c_over_gs(double lambda);
/* +inf for |lambda| >= 1. */
AQRM_API double aqrm_g_t1_over_gs(double lambda);
/* Returns AQRM_ERR_CONFIG when g_over_gs < 2. */
AQRM_API aqrm_status aqrm_lambda_t1(double g_over_gs, double* out);
/* Root of the two-packet opposite-side channel energy, in g_s units. */
AQRM_API aqrm_status aqrm_e_omega_y_root_over_gs(double lambda, double omega, double Omega, double* out);

/* Parity-sector crossings in [g_lo, g_hi] (g_s units), ascending. *count
 * receives the number found; AQRM_ERR_BUFFER_TOO_SMALL if capacity < *count. */
AQRM_API aqrm_status aqrm_detect_crossings(double omega, double Omega, double lambda, double g_lo_gs,
                                           double g_hi_gs, size_t coarse_steps, double* out_g_over_gs,
                                           size_t capacity, size_t* count);

typedef struct aqrm_boundary_request {
    double omega, Omega;
    double lambda_min, lambda_max;
    size_t lambda_steps;
    double g_lo_gs, g_hi_gs;
    size_t coarse_steps;
    int include_analytic;   /* g_c and g_T1 closed forms at the same lambdas */
    int include_u1;         /* excitation-variance heuristic */
} aqrm_boundary_request;

AQRM_API void aqrm_boundary_request_default(aqrm_boundary_request* out);
/* Writes kind, lambda, g_over_gs, method, residual. */
AQRM_API aqrm_status aqrm_boundary_export(const aqrm_boundary_request* request, const char* path,
                                          size_t* n_points);

/* ---- scans -------------------------------------------------------------- */

typedef struct aqrm_scan_config {
    double omega, Omega;
    double lambda_min, lambda_max;
    size_t lambda_steps;
    double g_min_gs, g_max_gs;
    size_t g_steps;
    size_t n_max;            /* lower bound (adaptive) or exact (fixed) */
    int fixed_truncation;
    int allow_below_floor;
    int compute_nz;
    double nz_threshold;
    double grid_step;
    size_t workers;          /* 0 = AQRM_WORKERS or hardware parallelism */
} aqrm_scan_config;

typedef enum aqrm_point_status {
    AQRM_POINT_OK = 0,
    AQRM_POINT_DEGENERATE = 1,
    AQRM_POINT_FAILED = 2
} aqrm_point_status;

typedef struct aqrm_record {
    double lambda, g_over_gs, omega;
    double E0, E1, gap;
    int parity;
    double sigma_x, a_norm, AP;
    int n_z;
    double p_x, p_sigma, excitation, duality_mod;
    size_t n_max_used;
    aqrm_point_status status;
} aqrm_record;

typedef enum aqrm_regime { AQRM_REGIME_NORMAL = 0, AQRM_REGIME_X = 1, AQRM_REGIME_P = 2 } aqrm_regime;

typedef struct aqrm_phase_label {
    aqrm_regime regime;
    int parity;
    int n_z;
    int ambiguous;
} aqrm_phase_label;

typedef struct aqrm_dataset aqrm_dataset;

AQRM_API void aqrm_scan_config_default(aqrm_scan_config* out);
AQRM_API size_t aqrm_preset_count(void);
AQRM_API const char* aqrm_preset_name(size_t i);
AQRM_API const char* aqrm_preset_description(size_t i);
AQRM_API const char* aqrm_preset_quantity(size_t i);
AQRM_API aqrm_status aqrm_preset_config(const char* name, aqrm_scan_config* out);

/* label may be NULL; it is recorded as the preset name in the metadata. */
AQRM_API aqrm_status aqrm_scan_run(const aqrm_scan_config* config, const char* label, aqrm_dataset** out);
AQRM_API aqrm_status aqrm_dataset_read_csv(const char* path, aqrm_dataset** out);
AQRM_API void aqrm_dataset_destroy(aqrm_dataset* data);
AQRM_API aqrm_status aqrm_dataset_size(const aqrm_dataset* data, size_t* rows, size_t* failed);
AQRM_API aqrm_status aqrm_dataset_record(const aqrm_dataset* data, size_t i, aqrm_record* out);
AQRM_API aqrm_status aqrm_dataset_wall_time(const aqrm_dataset* data, double* seconds);
/* format: "csv" or "json". */
AQRM_API aqrm_status aqrm_dataset_write(const aqrm_dataset* data, const char* path, const char* format);

AQRM_API aqrm_status aqrm_classify(const aqrm_record* record, aqrm_phase_label* out);
AQRM_API const char* aqrm_regime_string(aqrm_regime regime);

#ifdef __cplusplus
}
#endif

#endif /* AQRM_H */
