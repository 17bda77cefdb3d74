#ifndef FRACDIFF_H
#define FRACDIFF_H

/* C interface to the fracdiff solver for d^alpha_t u - (kappa u_x)_x = f on
 * (0,1) x (0,T] with homogeneous Dirichlet data. All handles are opaque.
 * Every call returning fd_status leaves a message for fd_last_error() on
 * failure; the message is per thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FRACDIFF_BUILDING)
#    define FD_API __declspec(dllexport)
#  else
#    define FD_API __declspec(dllimport)
#  endif
#else
#  define FD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fd_status {
    FD_OK = 0,
    FD_ERR_INVALID_ARGUMENT = 1,
    FD_ERR_DOMAIN = 2,
    FD_ERR_SINGULAR = 3,
    FD_ERR_ACCURACY = 4,
    FD_ERR_IO = 5,
    FD_ERR_INTERNAL = 6
} fd_status;

typedef struct fd_problem fd_problem;
typedef struct fd_solution fd_solution;
typedef struct fd_reference fd_reference;

typedef double (*fd_space_fn)(double x, void* user);
typedef double (*fd_spacetime_fn)(double x, double t, void* user);

FD_API const char* fd_version(void);
/* Message of the last failed call on this thread, "" if none. */
FD_API const char* fd_last_error(void);
FD_API const char* fd_status_name(fd_status status);

/* ---- problems ---- */

/* Benchmark 1 (u0 = x(1-x)) or 2 (u0 = hat), kappa = 1, f = 0, T = 1. */
FD_API fd_status fd_problem_create_example(int example, double alpha, fd_problem** out);

typedef struct fd_problem_desc {
    double alpha;        /* (0, 1] */
    double final_time;   /* > 0 */
    fd_space_fn kappa;   /* required, positive */
    fd_spacetime_fn source;  /* NULL means f = 0 */
    fd_space_fn u0;      /* NULL means u0 = 0 */
    fd_space_fn u0_prime;    /* required when u0 is set */
    void* user;          /* passed to every callback */
} fd_problem_desc;

/* Callbacks must stay valid for the lifetime of the problem. */
FD_API fd_status fd_problem_create_custom(const fd_problem_desc* desc, fd_problem** out);
FD_API void fd_problem_destroy(fd_problem* problem);

/* ---- solutions ---- */

/* N time steps on the mesh t_n = (n tau)^gamma, M spatial subintervals. */
FD_API fd_status fd_solve(const fd_problem* problem, size_t N, double gamma, size_t M,
                          fd_solution** out);
FD_API void fd_solution_destroy(fd_solution* solution);

FD_API fd_status fd_solution_dims(const fd_solution* solution, size_t* N, size_t* M);
FD_API fd_status fd_solution_time(const fd_solution* solution, size_t n, double* t);
/* Nodal values at t_n, boundary included: `len` must be M + 1. */
FD_API fd_status fd_solution_level(const fd_solution* solution, size_t n, double* values,
                                   size_t len);
/* Same at any t in [0, T], linear in time on each slab. */
FD_API fd_status fd_solution_evaluate(const fd_solution* solution, double t, double* values,
                                      size_t len);
/* Largest relative weak-form slab residual. */
FD_API fd_status fd_solution_max_residual(const fd_solution* solution, double* out);
/* `t,x,value` for every level and node. */
FD_API fd_status fd_solution_write_csv(const fd_solution* solution, const char* path);

/* ---- reference series and errors ---- */

FD_API fd_status fd_reference_create_example(int example, double alpha, size_t terms,
                                             fd_reference** out);
FD_API void fd_reference_destroy(fd_reference* reference);
FD_API fd_status fd_reference_eval(const fd_reference* reference, double x, double t,
                                   double* out);

/* Max-in-time (sampled at thirds of each slab) and L2-in-time L2 errors. */
FD_API fd_status fd_error_norms(const fd_solution* solution, const fd_reference* reference,
                                double* e_tau, double* e_l2);
/* ||U^n - u(t_n)|| for n = 1..N; `len` must be N. */
FD_API fd_status fd_nodal_errors(const fd_solution* solution, const fd_reference* reference,
                                 double* out, size_t len);
FD_API fd_status fd_convergence_rate(double coarse, double fine, double* out);

/* E_alpha(-x) for alpha in (0, 1], x >= 0. */
FD_API fd_status fd_mlf_neg(double alpha, double x, double* out);

/* ---- studies ---- */

typedef struct fd_study_config {
    int example;
    double alpha;
    const double* gammas;
    size_t gamma_count;
    const size_t* ns;    /* doubling sequence */
    size_t n_count;
    size_t m;
    size_t terms;
    const char* output_dir;
    unsigned threads;    /* 0: hardware concurrency */
} fd_study_config;

/* Fills the defaults; the arrays point at static storage. */
FD_API void fd_study_config_default(fd_study_config* cfg);
FD_API fd_status fd_study_validate(const fd_study_config* cfg);

/* solution.csv for the first N and gamma. */
FD_API fd_status fd_cmd_solve(const fd_study_config* cfg);
/* table.csv over every (N, gamma). */
FD_API fd_status fd_cmd_convergence(const fd_study_config* cfg);
/* nodal_errors_<gamma>.csv for each gamma at the first N. */
FD_API fd_status fd_cmd_nodal_errors(const fd_study_config* cfg);

typedef struct fd_diagnostic {
    char name[64];
    double worst;
    double tolerance;
    size_t cases;
    int passed;
} fd_diagnostic;

/* Runs the randomized diagnostic suite. Up to `capacity` results are copied;
 * `count` receives the total. Returns FD_ERR_ACCURACY if any check fails. */
FD_API fd_status fd_selftest(uint64_t seed, fd_diagnostic* results, size_t capacity,
                             size_t* count);

#ifdef __cplusplus
}
#endif

#endif
