/*
 * vibron2d — C API for the two-dimensional vibron-model bending toolkit.
 *
 * The library diagonalizes algebraic bending Hamiltonians block by
 * block in the vibrational angular momentum l, computes fidelity-
 * susceptibility and participation-ratio probes, classifies eigenstates
 * as linear or bent, and fits four-body Hamiltonian coefficients to
 * observed band origins.
 *
 * All handles are opaque; every fallible call returns a v2d_status and
 * leaves a human-readable detail in v2d_last_error() (thread local).
 * Handles are immutable once created (except v2d_params before it is
 * first consumed) and may be shared across threads.
 */

#ifndef VIBRON2D_H
#define VIBRON2D_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define V2D_API __declspec(dllexport)
#else
#define V2D_API __attribute__((visibility("default")))
#endif

typedef enum v2d_status {
    V2D_OK = 0,
    V2D_EINVAL = 1,      /* invalid argument or schema violation */
    V2D_EDEGENERATE = 2, /* degenerate spectrum where simple is required */
    V2D_ESINGULAR = 3,   /* rank-deficient least-squares normal equations */
    V2D_ENOCONVERGE = 4, /* eigensolver failed to converge */
    V2D_EPARSE = 5,      /* malformed input file */
    V2D_EIO = 6,         /* file could not be read or written */
    V2D_EFLAT = 7,       /* peak search on a flat curve */
    V2D_EINTERNAL = 8,   /* unexpected failure */
} v2d_status;

typedef enum v2d_basis {
    V2D_BASIS_U2 = 0,
    V2D_BASIS_SO3 = 1,
} v2d_basis;

typedef enum v2d_phase {
    V2D_PHASE_BENT = 0,
    V2D_PHASE_LINEAR = 1,
    V2D_PHASE_CRITICAL = 2,
} v2d_phase;

typedef enum v2d_notation {
    V2D_NOTATION_BENT = 0,
    V2D_NOTATION_LINEAR = 1,
} v2d_notation;

typedef struct v2d_params v2d_params;
typedef struct v2d_spectrum v2d_spectrum;
typedef struct v2d_split v2d_split;
typedef struct v2d_lines v2d_lines;
typedef struct v2d_fit_result v2d_fit_result;

V2D_API const char *v2d_version(void);
V2D_API const char *v2d_status_name(v2d_status status);
/* Detail message of the most recent failure on this thread. */
V2D_API const char *v2d_last_error(void);

/* ---- Hamiltonian parameters ------------------------------------- */

/* Names of the four-body coefficients, P11 ... P47. */
V2D_API int v2d_param_count(void);
V2D_API const char *v2d_param_name(int index);

/* Four-body Hamiltonian with all coefficients zero (cm^-1 units). */
V2D_API v2d_status v2d_params_create(int n_vibron, v2d_params **out);
/* One-control-parameter model H(xi) = (1-xi) n + xi/(N-1) P, xi in [0,1]. */
V2D_API v2d_status v2d_params_create_model(int n_vibron, double xi,
                                           v2d_params **out);
V2D_API v2d_status v2d_params_set(v2d_params *p, const char *name,
                                  double value_cm1);
V2D_API v2d_status v2d_params_get(const v2d_params *p, const char *name,
                                  double *out);
V2D_API int v2d_params_vibron(const v2d_params *p);
V2D_API int v2d_params_is_model(const v2d_params *p);
V2D_API v2d_status v2d_params_xi(const v2d_params *p, double *out);
V2D_API void v2d_params_free(v2d_params *p);

/* ---- Basis ------------------------------------------------------- */

/* Number of U(2)-chain states with angular momentum l: floor((N-l)/2)+1. */
V2D_API v2d_status v2d_block_dimension(int n_vibron, int l, int *out);

/* ---- Spectra ------------------------------------------------------ */

/* Diagonalize the l block. Eigenvalues ascend; eigenvector sign is
 * fixed (first nonzero entry positive), so results are reproducible
 * bit for bit. */
V2D_API v2d_status v2d_spectrum_create(const v2d_params *p, int l,
                                       v2d_spectrum **out);
V2D_API int v2d_spectrum_dimension(const v2d_spectrum *s);
V2D_API v2d_status v2d_spectrum_energies(const v2d_spectrum *s, double *out,
                                         int capacity);
/* Coefficients of eigenstate k in the U(2) basis (n = l, l+2, ...). */
V2D_API v2d_status v2d_spectrum_state(const v2d_spectrum *s, int k, double *out,
                                      int capacity);
V2D_API void v2d_spectrum_free(v2d_spectrum *s);

/* ---- Lambda deformation and probes -------------------------------- */

/* Partition of the l block Hamiltonian into U(2)-diagonal, SO(3)-
 * diagonal, mixed and shared parts; the family
 * H(lambda) = (1-lambda) H_u2 + (1+lambda) H_so3
 *           + (1-lambda^2) H_mix + H_shared
 * interpolates between the two chains, recovering the input at
 * lambda = 0. */
V2D_API v2d_status v2d_split_create(const v2d_params *p, int l, v2d_split **out);
V2D_API v2d_status v2d_split_spectrum(const v2d_split *s, double lambda,
                                      v2d_spectrum **out);
V2D_API void v2d_split_free(v2d_split *s);

/* PR = 1 / sum c_i^4 of a normalized coefficient vector. */
V2D_API v2d_status v2d_participation_ratio(const double *coeffs, int dim,
                                           double *out);
/* |<a|b>| of two normalized vectors. */
V2D_API v2d_status v2d_fidelity(const double *a, const double *b, int dim,
                                double *out);
/* PR of eigenstate k in the U(2) or SO(3) basis. */
V2D_API v2d_status v2d_pr_state(const v2d_spectrum *s, int k, v2d_basis basis,
                                double *out);
/* Fidelity susceptibility of state k at the given lambda. */
V2D_API v2d_status v2d_qfs_state(const v2d_split *s, double lambda, int k,
                                 double *out);
/* chi for every state over a lambda grid; chi[g*dim + k] is state k at
 * grid point g. */
V2D_API v2d_status v2d_qfs_scan(const v2d_split *s, const double *lambdas,
                                int count, int threads, double *chi);
/* Peak position of one chi(lambda) row, parabolic refinement, clamped
 * to [-1, 1]. */
V2D_API v2d_status v2d_lambda_max(const double *lambdas, const double *chi,
                                  int count, double *out);
/* Per-state lambda_max and phase (v2d_phase) for the split's block;
 * transition_out receives the state with |lambda_max| closest to 0.
 * Any output pointer may be NULL. */
V2D_API v2d_status v2d_classify(const v2d_split *s, const double *lambdas,
                                int count, double tol, int threads,
                                double *lambda_max_out, int *phase_out,
                                int *transition_out);

/* ---- CSV / JSON products ------------------------------------------ */
/* All files are UTF-8, newline terminated, 12 significant digits, and
 * byte-identical across runs for identical inputs. */

/* Model correlation diagram over a xi grid,
 * header control,level_index,l,energy. */
V2D_API v2d_status v2d_scan_xi_csv(int n_vibron, const double *xis, int count,
                                   const int *ls, int nl, int threads,
                                   const char *path);
/* Lambda correlation diagram for a model or four-body Hamiltonian. */
V2D_API v2d_status v2d_scan_lambda_csv(const v2d_params *p,
                                       const double *lambdas, int count,
                                       const int *ls, int nl, int threads,
                                       const char *path);
/* Probe products: scan_path gets lambda,l,state_index,chi,chi_over_N;
 * lambda0_path gets l,state_index,energy,chi,chi_over_N,pr_u2,pr_so3.
 * Either path may be NULL to skip that product. */
V2D_API v2d_status v2d_probe_csv(const v2d_params *p, const double *lambdas,
                                 int count, const int *ls, int nl, int threads,
                                 const char *scan_path, const char *lambda0_path);
/* l = 0 classification, header l,state_index,lambda_max,phase. */
V2D_API v2d_status v2d_classify_csv(const v2d_params *p, const double *lambdas,
                                    int count, double tol, int threads,
                                    const char *path, int *transition_out);

/* ---- Band-origin data and fitting ---------------------------------- */

/* Load a band-origin CSV with header
 * notation,label1,label2,energy_cm1[,weight]; notation is bent or
 * linear, label1 is nu_b or n, label2 is l. '#' lines are comments. */
V2D_API v2d_status v2d_lines_load(const char *path, v2d_lines **out);
V2D_API int v2d_lines_count(const v2d_lines *lines);
V2D_API v2d_status v2d_lines_get(const v2d_lines *lines, int i, int *notation,
                                 int *label1, int *label2, double *energy_cm1,
                                 double *weight);
/* Assigned (l, k) block state per line; either array may be NULL. */
V2D_API v2d_status v2d_lines_assign(const v2d_lines *lines, int n_vibron,
                                    int *ls, int *ks);
/* Calculated band origins E(line) - E(l=0, k=0), one per line. */
V2D_API v2d_status v2d_band_origins(const v2d_params *p, const v2d_lines *lines,
                                    double *out);
/* Levenberg-Marquardt optimization of the named coefficients starting
 * from `initial`. Non-convergence within max_iterations is not an
 * error; query v2d_fit_converged. */
V2D_API v2d_status v2d_fit_run(const v2d_params *initial, const v2d_lines *lines,
                               const char *const *active_names, int n_active,
                               int max_iterations, double tol_rms_cm1,
                               v2d_fit_result **out);
V2D_API double v2d_fit_rms(const v2d_fit_result *r);
V2D_API int v2d_fit_converged(const v2d_fit_result *r);
V2D_API int v2d_fit_iterations(const v2d_fit_result *r);
V2D_API v2d_status v2d_fit_params(const v2d_fit_result *r, v2d_params **out);
V2D_API v2d_status v2d_fit_sigma(const v2d_fit_result *r, const char *name,
                                 double *out);
V2D_API v2d_status v2d_fit_residuals(const v2d_fit_result *r, double *out,
                                     int capacity);
/* JSON summary and residuals CSV
 * (notation,label1,label2,obs_cm1,calc_cm1,obs_minus_calc_cm1);
 * either path may be NULL. */
V2D_API v2d_status v2d_fit_write(const v2d_fit_result *r, const v2d_lines *lines,
                                 const char *json_path, const char *csv_path);
V2D_API void v2d_fit_free(v2d_fit_result *r);
V2D_API void v2d_lines_free(v2d_lines *lines);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VIBRON2D_H */
