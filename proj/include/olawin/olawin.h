/* olawin: overlap-add window design and evaluation.
 *
 * C interface to the shared library. All objects are opaque handles created
 * and destroyed through these functions; every fallible call returns an
 * olawin_status and leaves a human-readable message in olawin_last_error()
 * (thread-local, valid until the next failing call on the same thread).
 * Pointers returned by getters stay valid for the lifetime of the handle.
 */
#ifndef OLAWIN_OLAWIN_H
#define OLAWIN_OLAWIN_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum olawin_status {
    OLAWIN_OK = 0,
    OLAWIN_ERR_INVALID_ARGUMENT = 1, /* precondition violated */
    OLAWIN_ERR_SOLVER = 2,           /* iterative solve missed its target */
    OLAWIN_ERR_CALIBRATION = 3,      /* alpha calibration could not bracket */
    OLAWIN_ERR_INTERNAL = 4
} olawin_status;

typedef struct olawin_window olawin_window;
typedef struct olawin_kernel olawin_kernel;
typedef struct olawin_spectrum olawin_spectrum;

const char* olawin_version(void);
const char* olawin_last_error(void);

/* ---- windows ---- */

olawin_status olawin_window_half_sine(int64_t length, olawin_window** out);
olawin_status olawin_window_kbd(int64_t length, double alpha, olawin_window** out);

/* Unconstrained maximum-concentration window (dominant kernel eigenvector);
 * a reference object, not valid for overlap-add reconstruction. */
olawin_status olawin_window_dpss_unconstrained(int64_t length, double alpha,
                                               olawin_window** out);

/* Conventional low-overlap construction: halves of a full-overlap window of
 * length 2T at the ends, ones in the middle. */
olawin_status olawin_window_extend_flat(const olawin_window* core, int64_t length,
                                        olawin_window** out);

void olawin_window_free(olawin_window* w);

int64_t olawin_window_length(const olawin_window* w);
int64_t olawin_window_overlap(const olawin_window* w);
const char* olawin_window_label(const olawin_window* w);
/* Pointer to length() samples. */
const double* olawin_window_samples(const olawin_window* w);

/* Princen-Bradley residual at the window's declared overlap. per_index may
 * be NULL; otherwise it must hold overlap() doubles. */
olawin_status olawin_window_pb_residual(const olawin_window* w, double* max_abs,
                                        double* per_index);

/* ---- constrained design ---- */

typedef struct olawin_solve_options {
    double grad_tol;       /* default 1e-10 */
    double obj_tol;        /* default 1e-12 */
    int64_t max_iters;     /* default 10000 */
    int enforce_symmetry;  /* default 1 */
    int multistart;        /* default 1 */
    uint64_t seed;         /* multistart perturbation seed, default 12345 */
} olawin_solve_options;

void olawin_solve_options_default(olawin_solve_options* opts);

typedef struct olawin_solve_trace {
    int64_t iterations;
    double final_objective;
    double final_grad_norm;
    int converged;
} olawin_solve_trace;

/* Maximum-concentration window under the full-overlap constraints. opts and
 * trace may be NULL. Non-convergence is reported through trace->converged,
 * not as an error. */
olawin_status olawin_design_ola_dpss(int64_t length, double alpha,
                                     const olawin_solve_options* opts,
                                     olawin_window** out, olawin_solve_trace* trace);

olawin_status olawin_design_low_overlap(int64_t length, int64_t overlap, double alpha,
                                        const olawin_solve_options* opts,
                                        olawin_window** out, olawin_solve_trace* trace);

/* ---- concentration kernel ---- */

olawin_status olawin_kernel_create(int64_t length, double alpha, olawin_kernel** out);
void olawin_kernel_free(olawin_kernel* k);
int64_t olawin_kernel_length(const olawin_kernel* k);
double olawin_kernel_alpha(const olawin_kernel* k);
/* First row of the symmetric Toeplitz matrix, length() entries. */
const double* olawin_kernel_entries(const olawin_kernel* k);

/* Energy-concentration ratio of a window against a kernel of the same
 * length. Either output pointer may be NULL. */
olawin_status olawin_concentration(const olawin_window* w, const olawin_kernel* k,
                                   double* tau_linear, double* tau_db);

/* ---- spectrum ---- */

olawin_status olawin_spectrum_compute(const olawin_window* w, int pad_factor,
                                      olawin_spectrum** out);
void olawin_spectrum_free(olawin_spectrum* s);

/* Number of stored bins (normalized frequencies in [0, 1/2]). */
int64_t olawin_spectrum_bins(const olawin_spectrum* s);
const double* olawin_spectrum_frequencies(const olawin_spectrum* s);
const double* olawin_spectrum_magnitude_db(const olawin_spectrum* s);
/* Normalized frequency of the first spectral null (NaN if undetectable). */
double olawin_spectrum_main_lobe_width(const olawin_spectrum* s);
int64_t olawin_spectrum_side_lobe_count(const olawin_spectrum* s);
olawin_status olawin_spectrum_side_lobe(const olawin_spectrum* s, int64_t index,
                                        double* frequency, double* level_db);

/* ---- calibration ---- */

typedef enum olawin_family {
    OLAWIN_FAMILY_KBD = 0,
    OLAWIN_FAMILY_OLA_DPSS = 1
} olawin_family;

/* Alpha at which the family window's main-lobe width matches the
 * reference's (bisection; deterministic). opts applies to the ola-dpss
 * family and may be NULL. */
olawin_status olawin_match_main_lobe_alpha(const olawin_window* reference,
                                           olawin_family family, int64_t length,
                                           double tol, int pad_factor,
                                           const olawin_solve_options* opts,
                                           double* alpha_out);

/* ---- overlap-add verification ---- */

typedef struct olawin_recon_report {
    double max_abs_error;
    int64_t interior_begin; /* inclusive */
    int64_t interior_end;   /* exclusive */
    double square_sum_deviation;
} olawin_recon_report;

/* Round-trip the signal through segmentation and overlap-add synthesis with
 * no modification; signal must hold at least 2 * length samples. */
olawin_status olawin_verify_reconstruction(const olawin_window* w,
                                           const double* signal, int64_t n,
                                           olawin_recon_report* out);

/* Deterministic uniform [-1, 1) test signal (mt19937_64, top 53 bits). */
olawin_status olawin_noise_signal(uint64_t seed, int64_t n, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OLAWIN_OLAWIN_H */
