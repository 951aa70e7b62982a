/* levyliq: analytic liquidation / Parisian ruin quantities of the
 * three-barrier spectrally negative Levy model, plus a Monte Carlo oracle.
 *
 * All entry points return a status code; results come back through out
 * pointers.  Handles are opaque and immutable once built, so any number of
 * threads may evaluate against the same handle concurrently.  On failure,
 * llq_last_error() returns a thread-local description of the problem.
 */
#ifndef LEVYLIQ_H
#define LEVYLIQ_H

#include <stdint.h>

#if defined(_WIN32)
#define LEVYLIQ_API __declspec(dllexport)
#else
#define LEVYLIQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum llq_status {
    LLQ_OK = 0,
    LLQ_ERR_INVALID_ARGUMENT = 1,
    LLQ_ERR_SOLVER = 2,
    LLQ_ERR_DEGENERATE_ROOTS = 3,
    LLQ_ERR_NUMERIC = 4,
    LLQ_ERR_ATOM_POINT = 5,
    LLQ_ERR_INTERNAL = 6
} llq_status;

typedef struct llq_model llq_model;     /* spectrally negative Levy model */
typedef struct llq_scale llq_scale;     /* q-scale function pair (W_q, Z_q) */
typedef struct llq_problem llq_problem; /* three-barrier liquidation problem */

LEVYLIQ_API const char* llq_status_name(llq_status status);
LEVYLIQ_API const char* llq_last_error(void);

/* ---- models ----------------------------------------------------------- */

/* A model starts as drift + sigma * B_t; jump components are appended. */
LEVYLIQ_API llq_model* llq_model_new(double drift, double gaussian_sigma);
LEVYLIQ_API void llq_model_free(llq_model* model);
LEVYLIQ_API llq_status llq_model_add_exponential_jumps(llq_model* model, double intensity,
                                                       double gamma);
LEVYLIQ_API llq_status llq_model_add_erlang2_jumps(llq_model* model, double intensity,
                                                   double beta);

LEVYLIQ_API llq_status llq_psi(const llq_model* model, double theta, double* out);
LEVYLIQ_API llq_status llq_safety_loading(const llq_model* model, double* out);
LEVYLIQ_API llq_status llq_phi(const llq_model* model, double q, double* out);
LEVYLIQ_API llq_status llq_levy_tail(const llq_model* model, double y, double* out);

/* ---- scale functions --------------------------------------------------- */

LEVYLIQ_API llq_status llq_scale_new(const llq_model* model, double q, llq_scale** out);
LEVYLIQ_API void llq_scale_free(llq_scale* scale);
LEVYLIQ_API llq_status llq_scale_w(const llq_scale* scale, double x, double* out);
LEVYLIQ_API llq_status llq_scale_w_prime(const llq_scale* scale, double x, double* out);
LEVYLIQ_API llq_status llq_scale_z(const llq_scale* scale, double x, double* out);

/* Max relative error of the partial-fraction Laplace transform against
 * 1/(psi(theta)-q) over `n` grid points above Phi_q. */
LEVYLIQ_API llq_status llq_scale_check_laplace(const llq_scale* scale, const double* thetas,
                                               int n, double* max_rel_err);

/* ---- liquidation problems ---------------------------------------------- */

LEVYLIQ_API llq_status llq_problem_new(const llq_model* solvent, const llq_model* insolvent,
                                       double a, double b, double c, double grace_rate,
                                       double discount, double start, llq_problem** out);
LEVYLIQ_API void llq_problem_free(llq_problem* problem);

LEVYLIQ_API llq_status llq_liquidation_probability(const llq_problem* problem, double* out);
LEVYLIQ_API llq_status llq_liquidation_laplace(const llq_problem* problem, double z, double* out);
LEVYLIQ_API llq_status llq_joint_cdf(const llq_problem* problem, double u, double z, double* out);
LEVYLIQ_API llq_status llq_atom_at_a(const llq_problem* problem, double z, double* out);
LEVYLIQ_API llq_status llq_joint_density(const llq_problem* problem, double u, double z, double h,
                                         double* out);
LEVYLIQ_API llq_status llq_exit_before_liquidation(const llq_problem* problem, double z,
                                                   double* out);

/* Gerber-Shiu functional with a caller-supplied penalty f(u, ctx); `bound`
 * is a sup bound of |f| on (-inf, c]. */
typedef double (*llq_penalty_fn)(double u, void* ctx);
LEVYLIQ_API llq_status llq_gerber_shiu(const llq_problem* problem, llq_penalty_fn f, void* ctx,
                                       double bound, double z, double* out);

/* ---- Parisian ruin (single model) -------------------------------------- */

LEVYLIQ_API llq_status llq_parisian_ruin_prob(const llq_model* model, double lambda, double x,
                                              double* out);
LEVYLIQ_API llq_status llq_parisian_ruin_prob_barrier(const llq_model* model, double lambda,
                                                      double a, double x, double* out);
LEVYLIQ_API llq_status llq_parisian_exit_laplace(const llq_model* model, double q, double lambda,
                                                 double a, double x, double z, double* down,
                                                 double* up);
LEVYLIQ_API llq_status llq_parisian_gs_density(const llq_model* model, double q, double lambda,
                                               const double* a, double x, double z, double u,
                                               double* out);
LEVYLIQ_API llq_status llq_k_function(const llq_model* model, double q, double lambda, double a,
                                      double b, double x, double z, double c, double* out);

/* ---- Monte Carlo -------------------------------------------------------- */

typedef struct llq_sim_config {
    long paths;
    double step;
    double horizon;
    uint64_t seed;
    int bridge_correction; /* nonzero: Brownian-bridge barrier test */
    int threads;           /* 0 = hardware concurrency */
} llq_sim_config;

typedef struct llq_sim_result {
    double mean;
    double std_err;
    double ci_lo;
    double ci_hi;
    long n;
    double censored_fraction;
} llq_sim_result;

typedef enum llq_functional {
    LLQ_FUNC_LIQ_PROB = 0,
    LLQ_FUNC_LAPLACE = 1,
    LLQ_FUNC_JOINT_CDF = 2,
    LLQ_FUNC_EXIT_UP = 3,
    LLQ_FUNC_CREEPING_MASS = 4
} llq_functional;

/* z: pointer to the upper level, or NULL for none (LLQ_FUNC_LIQ_PROB only).
 * u: JointCdf threshold, ignored otherwise. */
LEVYLIQ_API llq_status llq_simulate(const llq_problem* problem, llq_functional functional,
                                    const double* z, double u, const llq_sim_config* cfg,
                                    llq_sim_result* out);

/* a: lower barrier or NULL for plain Parisian ruin. */
LEVYLIQ_API llq_status llq_simulate_parisian(const llq_model* model, double lambda,
                                             const double* a, double x,
                                             const llq_sim_config* cfg, llq_sim_result* out);

#ifdef __cplusplus
}
#endif

#endif /* LEVYLIQ_H */
