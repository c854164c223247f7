/*
 * C API of the Gabor frame duality toolkit. All functions return a
 * gabor_status; results come back through out-parameters. Handles are
 * opaque and must be released with the matching *_free call. The last
 * error detail is kept per thread (gabor_last_error).
 */
#ifndef GABOR_CAPI_H
#define GABOR_CAPI_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gabor_status {
    GABOR_OK = 0,
    GABOR_E_PARAMS = 1,
    GABOR_E_LATTICE = 2,
    GABOR_E_GRID_MISMATCH = 3,
    GABOR_E_COMMENSURABILITY = 4,
    GABOR_E_GRID_NARROW = 5,
    GABOR_E_NOT_FRAME = 6,
    GABOR_E_SINGULAR_SECTION = 7,
    GABOR_E_INSUFFICIENT_DATA = 8,
    GABOR_E_BAND = 9,
    GABOR_E_IO = 10,
    GABOR_E_INTERNAL = 11
} gabor_status;

typedef struct gabor_signal gabor_signal;
typedef struct gabor_lattice gabor_lattice;
typedef struct gabor_table gabor_table;
typedef struct gabor_ofdm gabor_ofdm;
typedef struct gabor_channel gabor_channel;

const char* gabor_version(void);
const char* gabor_status_name(gabor_status status);
/* Detail message of the last failing call on this thread. */
const char* gabor_last_error(void);

/* ------------------------------------------------------------------ */
/* Signals                                                             */

gabor_status gabor_signal_gaussian(int64_t t0_samples, int64_t dt_denominator,
                                   int64_t length, gabor_signal** out);
gabor_status gabor_signal_rectangular(int64_t t0_samples, int64_t dt_denominator,
                                      int64_t length, int64_t width_samples,
                                      gabor_signal** out);
gabor_status gabor_signal_raised_cosine(int64_t t0_samples, int64_t dt_denominator,
                                        int64_t length, int64_t half_width_samples,
                                        gabor_signal** out);
gabor_status gabor_signal_from_samples(int64_t t0_samples, int64_t dt_denominator,
                                       int64_t length, const double* re,
                                       const double* im /* may be NULL */,
                                       gabor_signal** out);
/* Window spec JSON (see README for the schema). */
gabor_status gabor_signal_from_json(const char* json_text, gabor_signal** out);
void gabor_signal_free(gabor_signal* s);

int64_t gabor_signal_length(const gabor_signal* s);
double gabor_signal_dt(const gabor_signal* s);
double gabor_signal_t0(const gabor_signal* s);
double gabor_signal_norm(const gabor_signal* s);
/* Caller provides arrays of gabor_signal_length(s) doubles (im may be NULL). */
gabor_status gabor_signal_copy(const gabor_signal* s, double* re, double* im);
gabor_status gabor_signal_time_axis(const gabor_signal* s, double* t);

gabor_status gabor_signal_inner(const gabor_signal* f, const gabor_signal* g,
                                double* re, double* im);
gabor_status gabor_signal_translate_modulate(const gabor_signal* f,
                                             int64_t shift_samples, double nu_hz,
                                             gabor_signal** out);
gabor_status gabor_signal_stft(const gabor_signal* f, const gabor_signal* g,
                               int64_t tau_samples, double omega_hz, double* re,
                               double* im);
gabor_status gabor_signal_fourier(const gabor_signal* f, gabor_signal** out);
gabor_status gabor_signal_normalized(const gabor_signal* f, gabor_signal** out);
gabor_status gabor_signal_add(const gabor_signal* a, const gabor_signal* b,
                              gabor_signal** out);
gabor_status gabor_signal_scale(const gabor_signal* f, double re, double im,
                                gabor_signal** out);
gabor_status gabor_signal_l2_distance(const gabor_signal* a, const gabor_signal* b,
                                      double* out);
gabor_status gabor_signal_truncation_mass(const gabor_signal* f, double margin,
                                          double* out);

/* families: 0 constant, 1 polynomial(param), 2 subexponential(param, param2),
 * 3 exponential(param) */
typedef struct gabor_weight_spec {
    int family;
    double param;
    double param2;
} gabor_weight_spec;

gabor_status gabor_signal_weighted_l1(const gabor_signal* f,
                                      const gabor_weight_spec* weight, double* out);
gabor_status gabor_weight_satisfies_grs(const gabor_weight_spec* weight, int* out);

/* models: 0 exponential, 1 polynomial */
gabor_status gabor_signal_decay_fit(const gabor_signal* f, int model, double* rate,
                                    double* log_constant, double* fit_quality);

gabor_status gabor_signal_localization(const gabor_signal* f, double* time_spread,
                                       double* freq_spread, double* heisenberg);

/* ------------------------------------------------------------------ */
/* Lattices                                                            */

gabor_status gabor_lattice_create(int p, int q, int64_t a_samples,
                                  int64_t dt_denominator, gabor_lattice** out);
void gabor_lattice_free(gabor_lattice* lat);
double gabor_lattice_a(const gabor_lattice* lat);
double gabor_lattice_b(const gabor_lattice* lat);
double gabor_lattice_ab(const gabor_lattice* lat);
double gabor_lattice_tf(const gabor_lattice* lat);
/* -1 oversampled (ab < 1), 0 critical, +1 undersampled */
int gabor_lattice_regime(const gabor_lattice* lat);

/* ------------------------------------------------------------------ */
/* Tables                                                              */

int64_t gabor_table_rows(const gabor_table* t);
int64_t gabor_table_cols(const gabor_table* t);
const char* gabor_table_column_name(const gabor_table* t, int64_t col);
gabor_status gabor_table_number(const gabor_table* t, int64_t row, int64_t col,
                                double* out);
/* Returns NULL for numeric cells. */
const char* gabor_table_text(const gabor_table* t, int64_t row, int64_t col);
/* CSV body (header + rows); valid until the table is freed or reused. */
const char* gabor_table_csv(const gabor_table* t);
void gabor_table_free(gabor_table* t);

/* ------------------------------------------------------------------ */
/* Wexler-Raz finite sections                                          */

gabor_status gabor_finite_section_dual(const gabor_signal* g, const gabor_lattice* lat,
                                       int n, gabor_signal** out);
gabor_status gabor_wexler_raz_residual(const gabor_signal* gamma, const gabor_signal* g,
                                       const gabor_lattice* lat, int m, double* out);
/* Columns: n, error_l2, cond, wr_residual. */
gabor_status gabor_convergence_study(const gabor_signal* g, const gabor_lattice* lat,
                                     const int* n_list, int n_count, int n_ref,
                                     int wr_m, gabor_table** out);
/* kind: 0 adjoint lattice, 1 frame lattice. Columns: k,l,kp,lp,re,im. */
gabor_status gabor_gram_table(const gabor_signal* g, const gabor_lattice* lat, int kind,
                              int n, gabor_table** out);
/* Columns: n, norm_plain, norm_thresholded, tau, rank_kept, rel_error.
 * delta perturbs the probe signal (data precision) and sets the threshold;
 * threshold_override < 0 means "use the estimate". */
gabor_status gabor_tsvd_study(const gabor_signal* g, const gabor_lattice* lat,
                              const int* n_list, int n_count, int span_radius,
                              double delta, int smoothness_p, double threshold_override,
                              uint64_t seed, gabor_table** out);
gabor_status gabor_reconstruct_error(const gabor_signal* f, const gabor_signal* g,
                                     const gabor_signal* gamma, const gabor_lattice* lat,
                                     int radius, int swap_roles, double* out);

/* ------------------------------------------------------------------ */
/* Laurent symbol path                                                 */

gabor_status gabor_frame_bounds(const gabor_signal* g, const gabor_lattice* lat, int K,
                                int64_t t_count, double* A, double* B, double* t_argmin,
                                double* t_argmax, int* is_frame);
/* Columns: t, lambda_min, lambda_max. */
gabor_status gabor_bounds_table(const gabor_signal* g, const gabor_lattice* lat, int K,
                                int64_t t_count, gabor_table** out);
gabor_status gabor_laurent_dual(const gabor_signal* g, const gabor_lattice* lat, int K,
                                gabor_signal** out);
gabor_status gabor_tight_window(const gabor_signal* g, const gabor_lattice* lat, int K,
                                int unit_norm, gabor_signal** out, int* floor_hits);
/* Decay table; see README for columns. */
gabor_status gabor_decay_study(const gabor_signal* g, const gabor_lattice* lat, int K,
                               const gabor_weight_spec* weights, int n_weights,
                               gabor_table** out);

/* ------------------------------------------------------------------ */
/* OFDM                                                                */

gabor_status gabor_channel_create(const int64_t* delay_samples,
                                  const double* doppler_cycles_per_grid,
                                  const double* gain_re, const double* gain_im,
                                  int n_taps, double noise_sigma, uint64_t seed,
                                  int normalize_gains, gabor_channel** out);
gabor_status gabor_channel_from_json(const char* json_text, gabor_channel** out);
void gabor_channel_free(gabor_channel* ch);
gabor_status gabor_apply_channel(const gabor_signal* s, const gabor_channel* ch,
                                 gabor_signal** out);

/* mode: 0 ofdm_tight, 1 bfdm_dual */
gabor_status gabor_ofdm_build(const gabor_signal* g, const gabor_lattice* lat, int K,
                              int mode, int n_subcarriers, int n_symbols,
                              double guard_seconds, gabor_ofdm** out);
void gabor_ofdm_free(gabor_ofdm* ofdm);
double gabor_ofdm_tf(const gabor_ofdm* ofdm);
double gabor_ofdm_orthogonality_error(const gabor_ofdm* ofdm);
double gabor_ofdm_frame_bound_ratio(const gabor_ofdm* ofdm);
double gabor_ofdm_heisenberg(const gabor_ofdm* ofdm);
gabor_status gabor_ofdm_pulse(const gabor_ofdm* ofdm, int receive,
                              gabor_signal** out);

typedef struct gabor_run_metrics {
    double orthogonality_error;
    double mse;
    double sir_db;
    double ber;
    double ber_ci95;
    double heisenberg_product;
    double frame_bound_ratio;
    int64_t n_bits;
    int64_t bit_errors;
} gabor_run_metrics;

gabor_status gabor_ofdm_interference(const gabor_ofdm* ofdm, const gabor_channel* ch,
                                     double* sir_db, gabor_table** leakage);
gabor_status gabor_ofdm_ber(const gabor_ofdm* ofdm, const gabor_channel* ch,
                            int n_frames, uint64_t seed, gabor_run_metrics* out);
/* Round-trip of one seeded QPSK frame through an ideal channel; reports the
 * worst symbol deviation. */
gabor_status gabor_ofdm_roundtrip(const gabor_ofdm* ofdm, uint64_t seed,
                                  double* max_symbol_error);

/* Columns: tf, p, q, b_over_a, heisenberg_tight, window_distance,
 * orthogonality_error, sir_identity_db. */
gabor_status gabor_tf_sweep(const gabor_signal* g, const int* p_list, const int* q_list,
                            int count, int K, gabor_table** out);

#ifdef __cplusplus
}
#endif

#endif /* GABOR_CAPI_H */
