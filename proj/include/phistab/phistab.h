#ifndef PHISTAB_PHISTAB_H
#define PHISTAB_PHISTAB_H

/* C interface to the phistab library: Phi-stability of Boolean functions,
 * upper bounds on the maximal stability, and an exhaustive small-n oracle.
 *
 * Every function returning phistab_status leaves a message retrievable with
 * phistab_last_error() (per thread) when the status is not PHISTAB_OK.
 * Strings returned through char** are owned by the caller and released with
 * phistab_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PHISTAB_BUILDING)
#    define PHISTAB_API __declspec(dllexport)
#  else
#    define PHISTAB_API __declspec(dllimport)
#  endif
#else
#  define PHISTAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum phistab_status {
  PHISTAB_OK = 0,
  PHISTAB_ERR_INVALID_ARGUMENT = 1,
  PHISTAB_ERR_DOMAIN = 2,
  PHISTAB_ERR_PARSE = 3,
  PHISTAB_ERR_INFEASIBLE = 4,
  PHISTAB_ERR_NOT_FOUND = 5,
  PHISTAB_ERR_IO = 6,
  PHISTAB_ERR_INTERNAL = 7
} phistab_status;

PHISTAB_API const char* phistab_version(void);
PHISTAB_API const char* phistab_status_name(phistab_status status);
/* Message of the last failed call on this thread; "" if none. */
PHISTAB_API const char* phistab_last_error(void);
PHISTAB_API void phistab_string_free(char* s);

/* ---- Boolean functions ------------------------------------------------ */

typedef struct phistab_function phistab_function;

/* Text form "n:<dim>;table:<hex>". Parse errors name the offending position. */
PHISTAB_API phistab_status phistab_function_parse(const char* text, phistab_function** out);
/* 1{x_k = sign}, k in [1, n], sign in {-1, +1}. */
PHISTAB_API phistab_status phistab_function_dictator(int n, int k, int sign, phistab_function** out);
/* Indicator of {x : x_coords[i] = signs[i] for all i}. */
PHISTAB_API phistab_status phistab_function_subcube(int n, const int* coords, const int* signs, size_t count,
                                                    phistab_function** out);
PHISTAB_API void phistab_function_free(phistab_function* f);
PHISTAB_API int phistab_function_dimension(const phistab_function* f);
PHISTAB_API double phistab_function_mean(const phistab_function* f);
PHISTAB_API phistab_status phistab_function_encode(const phistab_function* f, char** out);
/* Writes W_0..W_n; `len` must be at least n + 1. */
PHISTAB_API phistab_status phistab_function_degree_weights(const phistab_function* f, double* out, size_t len);

/* ---- Phi ---------------------------------------------------------------- */

/* alpha in [1, 16]. power != 0 selects t^alpha (alpha > 1) instead of
 * t ln_alpha(t). symmetric != 0 selects Phi(t) + Phi(1 - t). */
typedef struct phistab_phi {
  double alpha;
  int symmetric;
  int power;
} phistab_phi;

PHISTAB_API phistab_status phistab_phi_eval(phistab_phi phi, double t, double* out);
PHISTAB_API phistab_status phistab_stability(const phistab_function* f, phistab_phi phi, double rho, double* out);
PHISTAB_API phistab_status phistab_mutual_information(const phistab_function* f, phistab_phi phi, double rho,
                                                      double* out);
PHISTAB_API phistab_status phistab_dictator_stability(phistab_phi phi, double rho, double* out);

/* ---- Bounds ------------------------------------------------------------- */

typedef enum phistab_bound_kind {
  PHISTAB_BOUND_GAMMA_BAR = 0,
  PHISTAB_BOUND_GAMMA_HAT = 1,
  PHISTAB_BOUND_LAMBDA2 = 2,
  PHISTAB_BOUND_GAMMA_TILDE = 3,
  PHISTAB_BOUND_UPSILON = 4,
  PHISTAB_BOUND_LAMBDA_GENERIC = 5
} phistab_bound_kind;

typedef enum phistab_tilde_mode {
  PHISTAB_TILDE_AUTO = 0,
  PHISTAB_TILDE_DIRECT = 1,
  PHISTAB_TILDE_REFLECTED = 2
} phistab_tilde_mode;

typedef enum phistab_omega_kind {
  PHISTAB_OMEGA_MIN = 0,
  PHISTAB_OMEGA_FKN = 1,
  PHISTAB_OMEGA_KHINTCHINE = 2,
  PHISTAB_OMEGA_TRIVIAL = 3
} phistab_omega_kind;

typedef struct phistab_bound_request {
  phistab_bound_kind kind;
  double a;
  double rho;
  phistab_phi phi;
  unsigned grid;
  double tolerance;
  unsigned workers;
  phistab_tilde_mode tilde_mode;
  phistab_omega_kind omega;
  unsigned support;
  unsigned starts;
  uint64_t seed;
} phistab_bound_request;

typedef struct phistab_bound_summary {
  double value;
  double beta, z1, z2, z_tilde, z_hat, p, q; /* NaN when not applicable */
  int feasible;
  unsigned grid;
  unsigned refine_iters;
  double residual;
} phistab_bound_summary;

typedef struct phistab_bound phistab_bound;

/* Defaults: a = 1/2, rho = 1/2, Phi = tsallis(1) symmetric, grid 400,
 * tolerance 1e-10, one worker, automatic tilde mode, omega = min,
 * support 3, 64 starts, seed 0. */
PHISTAB_API void phistab_bound_request_init(phistab_bound_request* request);
PHISTAB_API phistab_status phistab_bound_kind_parse(const char* name, phistab_bound_kind* out);
PHISTAB_API const char* phistab_bound_kind_name(phistab_bound_kind kind);
PHISTAB_API phistab_status phistab_omega_kind_parse(const char* name, phistab_omega_kind* out);
/* *violation is NULL when Phi satisfies the bound's shape assumption,
 * otherwise a description of the violated assumption. */
PHISTAB_API phistab_status phistab_regime_check(phistab_bound_kind kind, phistab_phi phi, char** violation);
PHISTAB_API phistab_status phistab_bound_evaluate(const phistab_bound_request* request, phistab_bound** out);
PHISTAB_API void phistab_bound_free(phistab_bound* bound);
PHISTAB_API phistab_status phistab_bound_summarize(const phistab_bound* bound, phistab_bound_summary* out);
PHISTAB_API phistab_status phistab_bound_to_json(const phistab_bound* bound, char** out);

/* ---- Exhaustive oracle ------------------------------------------------- */

typedef struct phistab_oracle_options {
  unsigned workers;
  int canonicalize;
  int allow_n5;
  const char* checkpoint; /* NULL or "" for an in-memory run */
  size_t chunk_limit;
} phistab_oracle_options;

typedef struct phistab_report phistab_report;

PHISTAB_API void phistab_oracle_options_init(phistab_oracle_options* options);
PHISTAB_API phistab_status phistab_max_stability(int n, double a, phistab_phi phi, double rho,
                                                 const phistab_oracle_options* options, phistab_report** out);
PHISTAB_API phistab_status phistab_verify_dictator(int n, phistab_phi phi, double rho,
                                                   const phistab_oracle_options* options, phistab_report** out);
/* Evaluates the requested bound and compares it with the n-variable maximum.
 * For symmetric Phi a mean above 1/2 is evaluated at 1 - a. */
PHISTAB_API phistab_status phistab_verify_dominance(int n, const phistab_bound_request* request,
                                                    const phistab_oracle_options* options, phistab_report** out);
PHISTAB_API void phistab_report_free(phistab_report* report);
PHISTAB_API int phistab_report_pass(const phistab_report* report);
PHISTAB_API double phistab_report_max(const phistab_report* report);
PHISTAB_API double phistab_report_gap(const phistab_report* report);
PHISTAB_API double phistab_report_margin(const phistab_report* report);
PHISTAB_API phistab_status phistab_report_to_json(const phistab_report* report, char** out);

/* ---- Scalar roots ------------------------------------------------------ */

typedef struct phistab_root {
  double root;
  double residual;
  unsigned iterations;
  double bracket_lo;
  double bracket_hi;
} phistab_root;

PHISTAB_API phistab_status phistab_psi(double rho, double* out);
PHISTAB_API phistab_status phistab_rho_star(double tol, phistab_root* out);
PHISTAB_API phistab_status phistab_theta(double alpha, double tol, phistab_root* out);
PHISTAB_API phistab_status phistab_region_threshold(double alpha, double* out);

/* ---- Fourier weight bounds -------------------------------------------- */

/* Bound on W_1 of a balanced function with largest degree-1 coefficient beta. */
PHISTAB_API phistab_status phistab_omega(phistab_omega_kind kind, double beta, double* out);
PHISTAB_API phistab_status phistab_exhaustive_w(int n, double a, double* value, phistab_function** witness);
/* *found is 0 when no function of that mean has max |f^({i})| = beta. */
PHISTAB_API phistab_status phistab_exhaustive_w_beta(int n, double a, double beta, double* value, int* found);

/* ---- Asymmetric power-family lemmas ------------------------------------ */

PHISTAB_API phistab_status phistab_lemma_checks(const double* rho, size_t rho_count, size_t p_points,
                                                const double* alpha, size_t alpha_count, size_t* violations,
                                                char** json);

#ifdef __cplusplus
}
#endif

#endif
