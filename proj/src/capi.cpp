#include "gabor/capi.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "gabor/dual.hpp"
#include "gabor/gram.hpp"
#include "gabor/io.hpp"
#include "gabor/lattice.hpp"
#include "gabor/laurent.hpp"
#include "gabor/ofdm.hpp"
#include "gabor/signal.hpp"
#include "gabor/table.hpp"

struct gabor_signal {
    gabor::Signal value;
};
struct gabor_lattice {
    gabor::Lattice value;
};
struct gabor_table {
    gabor::Table value;
    mutable std::string csv_cache;
};
struct gabor_ofdm {
    gabor::OfdmConfig value;
};
struct gabor_channel {
    gabor::ChannelModel value;
};

namespace {

thread_local std::string g_last_error;

gabor_status status_of(gabor::ErrorCode code) {
    using gabor::ErrorCode;
    switch (code) {
        case ErrorCode::ok: return GABOR_OK;
        case ErrorCode::invalid_params: return GABOR_E_PARAMS;
        case ErrorCode::lattice: return GABOR_E_LATTICE;
        case ErrorCode::grid_mismatch: return GABOR_E_GRID_MISMATCH;
        case ErrorCode::commensurability: return GABOR_E_COMMENSURABILITY;
        case ErrorCode::grid_too_narrow: return GABOR_E_GRID_NARROW;
        case ErrorCode::not_a_frame: return GABOR_E_NOT_FRAME;
        case ErrorCode::singular_section: return GABOR_E_SINGULAR_SECTION;
        case ErrorCode::insufficient_data: return GABOR_E_INSUFFICIENT_DATA;
        case ErrorCode::band_truncation: return GABOR_E_BAND;
        case ErrorCode::io: return GABOR_E_IO;
        case ErrorCode::internal: return GABOR_E_INTERNAL;
    }
    return GABOR_E_INTERNAL;
}

template <typename Fn>
gabor_status guarded(Fn&& fn) {
    try {
        fn();
        return GABOR_OK;
    } catch (const gabor::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return GABOR_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return GABOR_E_INTERNAL;
    }
}

gabor_status invalid(const char* message) {
    g_last_error = message;
    return GABOR_E_PARAMS;
}

gabor::Weight weight_from_spec(const gabor_weight_spec& w) {
    switch (w.family) {
        case 0: return gabor::Weight::constant();
        case 1: return gabor::Weight::polynomial(w.param);
        case 2: return gabor::Weight::subexponential(w.param, w.param2);
        case 3: return gabor::Weight::exponential(w.param);
        default:
            gabor::fail(gabor::ErrorCode::invalid_params, "unknown weight family");
    }
}

gabor_signal* wrap(gabor::Signal s) { return new gabor_signal{std::move(s)}; }
gabor_table* wrap(gabor::Table t) { return new gabor_table{std::move(t), {}}; }

}  // namespace

extern "C" {

const char* gabor_version(void) { return "1.0.0"; }

const char* gabor_status_name(gabor_status status) {
    switch (status) {
        case GABOR_OK: return "OK";
        case GABOR_E_PARAMS: return "E_PARAMS";
        case GABOR_E_LATTICE: return "E_LATTICE";
        case GABOR_E_GRID_MISMATCH: return "E_GRID_MISMATCH";
        case GABOR_E_COMMENSURABILITY: return "E_COMMENSURABILITY";
        case GABOR_E_GRID_NARROW: return "E_GRID_NARROW";
        case GABOR_E_NOT_FRAME: return "E_NOT_FRAME";
        case GABOR_E_SINGULAR_SECTION: return "E_SINGULAR_SECTION";
        case GABOR_E_INSUFFICIENT_DATA: return "E_INSUFFICIENT_DATA";
        case GABOR_E_BAND: return "E_BAND";
        case GABOR_E_IO: return "E_IO";
        case GABOR_E_INTERNAL: return "E_INTERNAL";
    }
    return "E_INTERNAL";
}

const char* gabor_last_error(void) { return g_last_error.c_str(); }

/* ----------------------------- signals ----------------------------- */

gabor_status gabor_signal_gaussian(int64_t t0_samples, int64_t dt_denominator,
                                   int64_t length, gabor_signal** out) {
    if (!out) return invalid("null output pointer");
    return guarded([&] {
        *out = wrap(gabor::make_gaussian(gabor::Grid(t0_samples, 1, dt_denominator, length)));
    });
}

gabor_status gabor_signal_rectangular(int64_t t0_samples, int64_t dt_denominator,
                                      int64_t length, int64_t width_samples,
                                      gabor_signal** out) {
    if (!out) return invalid("null output pointer");
    return guarded([&] {
        *out = wrap(gabor::make_rectangular(
            gabor::Grid(t0_samples, 1, dt_denominator, length), width_samples));
    });
}

gabor_status gabor_signal_raised_cosine(int64_t t0_samples, int64_t dt_denominator,
                                        int64_t length, int64_t half_width_samples,
                                        gabor_signal** out) {
    if (!out) return invalid("null output pointer");
    return guarded([&] {
        *out = wrap(gabor::make_raised_cosine(
            gabor::Grid(t0_samples, 1, dt_denominator, length), half_width_samples));
    });
}

gabor_status gabor_signal_from_samples(int64_t t0_samples, int64_t dt_denominator,
                                       int64_t length, const double* re,
                                       const double* im, gabor_signal** out) {
    if (!out || !re) return invalid("null pointer argument");
    return guarded([&] {
        std::vector<gabor::cplx> samples(static_cast<std::size_t>(length));
        for (int64_t i = 0; i < length; ++i)
            samples[static_cast<std::size_t>(i)] =
                gabor::cplx(re[i], im ? im[i] : 0.0);
        *out = wrap(gabor::make_from_samples(
            gabor::Grid(t0_samples, 1, dt_denominator, length), std::move(samples)));
    });
}

gabor_status gabor_signal_from_json(const char* json_text, gabor_signal** out) {
    if (!out || !json_text) return invalid("null pointer argument");
    return guarded([&] { *out = wrap(gabor::window_from_json(json_text)); });
}

void gabor_signal_free(gabor_signal* s) { delete s; }

int64_t gabor_signal_length(const gabor_signal* s) { return s ? s->value.length() : 0; }
double gabor_signal_dt(const gabor_signal* s) { return s ? s->value.dt() : 0.0; }
double gabor_signal_t0(const gabor_signal* s) { return s ? s->value.t0() : 0.0; }
double gabor_signal_norm(const gabor_signal* s) { return s ? s->value.norm() : 0.0; }

gabor_status gabor_signal_copy(const gabor_signal* s, double* re, double* im) {
    if (!s || !re) return invalid("null pointer argument");
    for (int64_t i = 0; i < s->value.length(); ++i) {
        re[i] = s->value[i].real();
        if (im) im[i] = s->value[i].imag();
    }
    return GABOR_OK;
}

gabor_status gabor_signal_time_axis(const gabor_signal* s, double* t) {
    if (!s || !t) return invalid("null pointer argument");
    for (int64_t i = 0; i < s->value.length(); ++i) t[i] = s->value.time_at(i);
    return GABOR_OK;
}

gabor_status gabor_signal_inner(const gabor_signal* f, const gabor_signal* g, double* re,
                                double* im) {
    if (!f || !g || !re || !im) return invalid("null pointer argument");
    return guarded([&] {
        const gabor::cplx v = gabor::inner_product(f->value, g->value);
        *re = v.real();
        *im = v.imag();
    });
}

gabor_status gabor_signal_translate_modulate(const gabor_signal* f, int64_t shift_samples,
                                             double nu_hz, gabor_signal** out) {
    if (!f || !out) return invalid("null pointer argument");
    return guarded([&] {
        *out = wrap(gabor::translate_modulate(f->value, shift_samples, nu_hz));
    });
}

gabor_status gabor_signal_stft(const gabor_signal* f, const gabor_signal* g,
                               int64_t tau_samples, double omega_hz, double* re,
                               double* im) {
    if (!f || !g || !re || !im) return invalid("null pointer argument");
    return guarded([&] {
        const gabor::cplx v = gabor::stft_point(f->value, g->value, tau_samples, omega_hz);
        *re = v.real();
        *im = v.imag();
    });
}

gabor_status gabor_signal_fourier(const gabor_signal* f, gabor_signal** out) {
    if (!f || !out) return invalid("null pointer argument");
    return guarded([&] { *out = wrap(gabor::fourier_transform(f->value)); });
}

gabor_status gabor_signal_normalized(const gabor_signal* f, gabor_signal** out) {
    if (!f || !out) return invalid("null pointer argument");
    return guarded([&] { *out = wrap(gabor::normalized(f->value)); });
}

gabor_status gabor_signal_add(const gabor_signal* a, const gabor_signal* b,
                              gabor_signal** out) {
    if (!a || !b || !out) return invalid("null pointer argument");
    return guarded([&] { *out = wrap(gabor::add(a->value, b->value)); });
}

gabor_status gabor_signal_scale(const gabor_signal* f, double re, double im,
                                gabor_signal** out) {
    if (!f || !out) return invalid("null pointer argument");
    return guarded([&] { *out = wrap(gabor::scale(f->value, gabor::cplx(re, im))); });
}

gabor_status gabor_signal_l2_distance(const gabor_signal* a, const gabor_signal* b,
                                      double* out) {
    if (!a || !b || !out) return invalid("null pointer argument");
    return guarded([&] { *out = gabor::l2_distance(a->value, b->value); });
}

gabor_status gabor_signal_truncation_mass(const gabor_signal* f, double margin,
                                          double* out) {
    if (!f || !out) return invalid("null pointer argument");
    return guarded([&] { *out = gabor::truncation_mass(f->value, margin); });
}

gabor_status gabor_signal_weighted_l1(const gabor_signal* f,
                                      const gabor_weight_spec* weight, double* out) {
    if (!f || !weight || !out) return invalid("null pointer argument");
    return guarded([&] {
        *out = gabor::weighted_l1_norm(f->value, weight_from_spec(*weight));
    });
}

gabor_status gabor_weight_satisfies_grs(const gabor_weight_spec* weight, int* out) {
    if (!weight || !out) return invalid("null pointer argument");
    return guarded([&] { *out = weight_from_spec(*weight).satisfies_grs() ? 1 : 0; });
}

gabor_status gabor_signal_decay_fit(const gabor_signal* f, int model, double* rate,
                                    double* log_constant, double* fit_quality) {
    if (!f || !rate || !log_constant || !fit_quality)
        return invalid("null pointer argument");
    return guarded([&] {
        const gabor::DecayFit fit = gabor::decay_envelope_fit(
            f->value,
            model == 0 ? gabor::DecayModel::exponential : gabor::DecayModel::polynomial);
        *rate = fit.rate;
        *log_constant = fit.log_constant;
        *fit_quality = fit.fit_quality;
    });
}

gabor_status gabor_signal_localization(const gabor_signal* f, double* time_spread,
                                       double* freq_spread, double* heisenberg) {
    if (!f || !time_spread || !freq_spread || !heisenberg)
        return invalid("null pointer argument");
    return guarded([&] {
        const gabor::Localization loc = gabor::localization(f->value);
        *time_spread = loc.time_spread;
        *freq_spread = loc.freq_spread;
        *heisenberg = loc.heisenberg_product;
    });
}

/* ----------------------------- lattices ---------------------------- */

gabor_status gabor_lattice_create(int p, int q, int64_t a_samples,
                                  int64_t dt_denominator, gabor_lattice** out) {
    if (!out) return invalid("null output pointer");
    return guarded([&] {
        *out = new gabor_lattice{gabor::Lattice(p, q, a_samples, 1, dt_denominator)};
    });
}

void gabor_lattice_free(gabor_lattice* lat) { delete lat; }
double gabor_lattice_a(const gabor_lattice* lat) { return lat ? lat->value.a() : 0.0; }
double gabor_lattice_b(const gabor_lattice* lat) { return lat ? lat->value.b() : 0.0; }
double gabor_lattice_ab(const gabor_lattice* lat) { return lat ? lat->value.ab() : 0.0; }
double gabor_lattice_tf(const gabor_lattice* lat) { return lat ? lat->value.tf() : 0.0; }

int gabor_lattice_regime(const gabor_lattice* lat) {
    if (!lat) return 0;
    switch (lat->value.regime()) {
        case gabor::FrameRegime::oversampled: return -1;
        case gabor::FrameRegime::critical: return 0;
        case gabor::FrameRegime::undersampled: return 1;
    }
    return 0;
}

/* ------------------------------ tables ----------------------------- */

int64_t gabor_table_rows(const gabor_table* t) {
    return t ? static_cast<int64_t>(t->value.rows()) : 0;
}
int64_t gabor_table_cols(const gabor_table* t) {
    return t ? static_cast<int64_t>(t->value.cols()) : 0;
}

const char* gabor_table_column_name(const gabor_table* t, int64_t col) {
    if (!t || col < 0 || col >= static_cast<int64_t>(t->value.cols())) return nullptr;
    return t->value.column_names()[static_cast<std::size_t>(col)].c_str();
}

gabor_status gabor_table_number(const gabor_table* t, int64_t row, int64_t col,
                                double* out) {
    if (!t || !out) return invalid("null pointer argument");
    return guarded([&] {
        *out = t->value.number_at(static_cast<std::size_t>(row),
                                  static_cast<std::size_t>(col));
    });
}

const char* gabor_table_text(const gabor_table* t, int64_t row, int64_t col) {
    if (!t) return nullptr;
    try {
        const auto& cell = t->value.at(static_cast<std::size_t>(row),
                                       static_cast<std::size_t>(col));
        if (cell.kind != gabor::Table::Cell::Kind::text) return nullptr;
        return cell.text.c_str();
    } catch (...) {
        return nullptr;
    }
}

const char* gabor_table_csv(const gabor_table* t) {
    if (!t) return nullptr;
    t->csv_cache = t->value.to_csv();
    return t->csv_cache.c_str();
}

void gabor_table_free(gabor_table* t) { delete t; }

/* --------------------------- finite sections ----------------------- */

gabor_status gabor_finite_section_dual(const gabor_signal* g, const gabor_lattice* lat,
                                       int n, gabor_signal** out) {
    if (!g || !lat || !out) return invalid("null pointer argument");
    return guarded([&] {
        *out = wrap(gabor::finite_section_dual(g->value, lat->value, n));
    });
}

gabor_status gabor_wexler_raz_residual(const gabor_signal* gamma, const gabor_signal* g,
                                       const gabor_lattice* lat, int m, double* out) {
    if (!gamma || !g || !lat || !out) return invalid("null pointer argument");
    return guarded([&] {
        *out = gabor::wexler_raz_residual(gamma->value, g->value, lat->value, m);
    });
}

gabor_status gabor_convergence_study(const gabor_signal* g, const gabor_lattice* lat,
                                     const int* n_list, int n_count, int n_ref, int wr_m,
                                     gabor_table** out) {
    if (!g || !lat || !n_list || !out) return invalid("null pointer argument");
    return guarded([&] {
        *out = wrap(gabor::convergence_study(
            g->value, lat->value, std::vector<int>(n_list, n_list + n_count), n_ref,
            wr_m));
    });
}

gabor_status gabor_gram_table(const gabor_signal* g, const gabor_lattice* lat, int kind,
                              int n, gabor_table** out) {
    if (!g || !lat || !out) return invalid("null pointer argument");
    return guarded([&] {
        const gabor::GramOperator gram = gabor::GramOperator::build(
            g->value, lat->value,
            kind == 0 ? gabor::LatticeKind::adjoint : gabor::LatticeKind::frame, n);
        gabor::Table table({"k", "l", "kp", "lp", "re", "im"});
        for (std::int64_t k = -n; k <= n; ++k)
            for (std::int64_t l = -n; l <= n; ++l)
                for (std::int64_t kp = -n; kp <= n; ++kp)
                    for (std::int64_t lp = -n; lp <= n; ++lp) {
                        const gabor::cplx v =
                            gram.matrix()(gabor::GramOperator::flat_index(k, l, n),
                                          gabor::GramOperator::flat_index(kp, lp, n));
                        table.add_row({gabor::Table::Cell::number_cell(static_cast<double>(k)),
                                       gabor::Table::Cell::number_cell(static_cast<double>(l)),
                                       gabor::Table::Cell::number_cell(static_cast<double>(kp)),
                                       gabor::Table::Cell::number_cell(static_cast<double>(lp)),
                                       gabor::Table::Cell::number_cell(v.real()),
                                       gabor::Table::Cell::number_cell(v.imag())});
                    }
        *out = wrap(std::move(table));
    });
}

gabor_status gabor_tsvd_study(const gabor_signal* g, const gabor_lattice* lat,
                              const int* n_list, int n_count, int span_radius,
                              double delta, int smoothness_p, double threshold_override,
                              uint64_t seed, gabor_table** out) {
    if (!g || !lat || !n_list || !out) return invalid("null pointer argument");
    return guarded([&] {
        // Probe signal: random coefficients over the truncated frame atoms.
        // The data precision delta enters through the coefficient noise
        // inside tsvd_solve.
        gabor::SplitMix64 rng(gabor::derive_stream(seed, 0));
        const gabor::LatticeSteps steps =
            gabor::lattice_steps(lat->value, gabor::LatticeKind::frame);
        std::vector<gabor::cplx> acc(static_cast<std::size_t>(g->value.length()),
                                     gabor::cplx(0.0, 0.0));
        for (std::int64_t k = -span_radius; k <= span_radius; ++k)
            for (std::int64_t l = -span_radius; l <= span_radius; ++l) {
                const gabor::cplx c(rng.normal(), rng.normal());
                const gabor::Signal atom = gabor::lattice_atom(g->value, steps, k, l);
                for (std::int64_t i = 0; i < g->value.length(); ++i)
                    acc[static_cast<std::size_t>(i)] += c * atom[i];
            }
        const gabor::Signal f(g->value.grid(), std::move(acc));

        gabor::Table table({"n", "norm_plain", "norm_thresholded", "tau", "rank_kept",
                            "rel_error"});
        for (int i = 0; i < n_count; ++i) {
            const int n = n_list[i];
            gabor::TsvdConfig plain;
            plain.delta = delta;
            plain.smoothness_p = smoothness_p;
            plain.threshold_override = 0.0;
            plain.data_noise_seed = seed + 1;
            const gabor::TsvdResult unreg =
                gabor::tsvd_solve(g->value, lat->value, f, n, plain);

            gabor::TsvdConfig reg;
            reg.delta = delta;
            reg.smoothness_p = smoothness_p;
            if (threshold_override >= 0.0) reg.threshold_override = threshold_override;
            reg.data_noise_seed = seed + 1;
            const gabor::TsvdResult thresh =
                gabor::tsvd_solve(g->value, lat->value, f, n, reg);

            table.add_row({gabor::Table::Cell::number_cell(n),
                           gabor::Table::Cell::number_cell(unreg.coeff_norm),
                           gabor::Table::Cell::number_cell(thresh.coeff_norm),
                           gabor::Table::Cell::number_cell(thresh.tau),
                           gabor::Table::Cell::number_cell(
                               static_cast<double>(thresh.rank_kept)),
                           gabor::Table::Cell::number_cell(thresh.rel_error)});
        }
        *out = wrap(std::move(table));
    });
}

gabor_status gabor_reconstruct_error(const gabor_signal* f, const gabor_signal* g,
                                     const gabor_signal* gamma, const gabor_lattice* lat,
                                     int radius, int swap_roles, double* out) {
    if (!f || !g || !gamma || !lat || !out) return invalid("null pointer argument");
    return guarded([&] {
        *out = gabor::reconstruct(f->value, g->value, gamma->value, lat->value, radius,
                                  swap_roles != 0)
                   .rel_error;
    });
}

/* ------------------------------ laurent ---------------------------- */

gabor_status gabor_frame_bounds(const gabor_signal* g, const gabor_lattice* lat, int K,
                                int64_t t_count, double* A, double* B, double* t_argmin,
                                double* t_argmax, int* is_frame) {
    if (!g || !lat || !A || !B) return invalid("null pointer argument");
    return guarded([&] {
        const gabor::FrameBoundsResult fb =
            gabor::frame_bounds(g->value, lat->value, K, t_count);
        *A = fb.A;
        *B = fb.B;
        if (t_argmin) *t_argmin = fb.t_argmin;
        if (t_argmax) *t_argmax = fb.t_argmax;
        if (is_frame) *is_frame = fb.is_frame ? 1 : 0;
    });
}

gabor_status gabor_bounds_table(const gabor_signal* g, const gabor_lattice* lat, int K,
                                int64_t t_count, gabor_table** out) {
    if (!g || !lat || !out) return invalid("null pointer argument");
    return guarded([&] {
        const gabor::LaurentSymbol symbol = gabor::build_symbol(g->value, lat->value, K);
        const std::int64_t aS = lat->value.a_samples();
        std::int64_t count = (t_count == 0) ? aS : t_count;
        if (count < 1 || aS % count != 0)
            gabor::fail(gabor::ErrorCode::invalid_params, "t_count must divide a_samples");
        const std::int64_t stride = aS / count;
        gabor::Table table({"t", "lambda_min", "lambda_max"});
        for (std::int64_t i = 0; i < count; ++i) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
                symbol.blocks[static_cast<std::size_t>(i * stride)],
                Eigen::EigenvaluesOnly);
            const double t =
                static_cast<double>(i * stride) * g->value.dt();
            table.add_row({gabor::Table::Cell::number_cell(t),
                           gabor::Table::Cell::number_cell(solver.eigenvalues()(0)),
                           gabor::Table::Cell::number_cell(solver.eigenvalues()(
                               solver.eigenvalues().size() - 1))});
        }
        *out = wrap(std::move(table));
    });
}

gabor_status gabor_laurent_dual(const gabor_signal* g, const gabor_lattice* lat, int K,
                                gabor_signal** out) {
    if (!g || !lat || !out) return invalid("null pointer argument");
    return guarded([&] {
        *out = wrap(gabor::canonical_dual_laurent(g->value, lat->value, K));
    });
}

gabor_status gabor_tight_window(const gabor_signal* g, const gabor_lattice* lat, int K,
                                int unit_norm, gabor_signal** out, int* floor_hits) {
    if (!g || !lat || !out) return invalid("null pointer argument");
    return guarded([&] {
        gabor::TightWindowResult result =
            gabor::tight_window(g->value, lat->value, K, unit_norm != 0);
        if (floor_hits) *floor_hits = result.floor_hits;
        *out = wrap(std::move(result.window));
    });
}

gabor_status gabor_decay_study(const gabor_signal* g, const gabor_lattice* lat, int K,
                               const gabor_weight_spec* weights, int n_weights,
                               gabor_table** out) {
    if (!g || !lat || !weights || !out) return invalid("null pointer argument");
    return guarded([&] {
        std::vector<gabor::Weight> ws;
        ws.reserve(static_cast<std::size_t>(n_weights));
        for (int i = 0; i < n_weights; ++i) ws.push_back(weight_from_spec(weights[i]));
        *out = wrap(gabor::decay_preservation_study(g->value, lat->value, K, ws));
    });
}

/* ------------------------------- ofdm ------------------------------ */

gabor_status gabor_channel_create(const int64_t* delay_samples,
                                  const double* doppler_cycles_per_grid,
                                  const double* gain_re, const double* gain_im,
                                  int n_taps, double noise_sigma, uint64_t seed,
                                  int normalize_gains, gabor_channel** out) {
    if (!out || (n_taps > 0 && (!delay_samples || !doppler_cycles_per_grid || !gain_re ||
                                !gain_im)))
        return invalid("null pointer argument");
    return guarded([&] {
        std::vector<gabor::ChannelTap> taps;
        taps.reserve(static_cast<std::size_t>(n_taps));
        for (int i = 0; i < n_taps; ++i)
            taps.push_back(gabor::ChannelTap{delay_samples[i],
                                             doppler_cycles_per_grid[i],
                                             gabor::cplx(gain_re[i], gain_im[i])});
        *out = new gabor_channel{gabor::make_channel(std::move(taps), noise_sigma, seed,
                                                     normalize_gains != 0)};
    });
}

gabor_status gabor_channel_from_json(const char* json_text, gabor_channel** out) {
    if (!json_text || !out) return invalid("null pointer argument");
    return guarded([&] {
        *out = new gabor_channel{gabor::channel_from_json(json_text)};
    });
}

void gabor_channel_free(gabor_channel* ch) { delete ch; }

gabor_status gabor_apply_channel(const gabor_signal* s, const gabor_channel* ch,
                                 gabor_signal** out) {
    if (!s || !ch || !out) return invalid("null pointer argument");
    return guarded([&] { *out = wrap(gabor::apply_channel(s->value, ch->value)); });
}

gabor_status gabor_ofdm_build(const gabor_signal* g, const gabor_lattice* lat, int K,
                              int mode, int n_subcarriers, int n_symbols,
                              double guard_seconds, gabor_ofdm** out) {
    if (!g || !lat || !out) return invalid("null pointer argument");
    return guarded([&] {
        *out = new gabor_ofdm{gabor::build_ofdm(
            g->value, lat->value, K,
            mode == 0 ? gabor::OfdmMode::ofdm_tight : gabor::OfdmMode::bfdm_dual,
            n_subcarriers, n_symbols, guard_seconds)};
    });
}

void gabor_ofdm_free(gabor_ofdm* ofdm) { delete ofdm; }

double gabor_ofdm_tf(const gabor_ofdm* ofdm) { return ofdm ? ofdm->value.tf : 0.0; }
double gabor_ofdm_orthogonality_error(const gabor_ofdm* ofdm) {
    return ofdm ? ofdm->value.orthogonality_error : 0.0;
}
double gabor_ofdm_frame_bound_ratio(const gabor_ofdm* ofdm) {
    return ofdm ? ofdm->value.frame_bound_ratio : 0.0;
}
double gabor_ofdm_heisenberg(const gabor_ofdm* ofdm) {
    return ofdm ? ofdm->value.psi_localization.heisenberg_product : 0.0;
}

gabor_status gabor_ofdm_pulse(const gabor_ofdm* ofdm, int receive, gabor_signal** out) {
    if (!ofdm || !out) return invalid("null pointer argument");
    return guarded([&] {
        *out = wrap(receive ? ofdm->value.phi : ofdm->value.psi);
    });
}

gabor_status gabor_ofdm_interference(const gabor_ofdm* ofdm, const gabor_channel* ch,
                                     double* sir_db, gabor_table** leakage) {
    if (!ofdm || !ch || !sir_db) return invalid("null pointer argument");
    return guarded([&] {
        gabor::InterferenceResult result =
            gabor::interference_analysis(ofdm->value, ch->value);
        *sir_db = result.sir_db;
        if (leakage) *leakage = wrap(std::move(result.leakage));
    });
}

gabor_status gabor_ofdm_ber(const gabor_ofdm* ofdm, const gabor_channel* ch,
                            int n_frames, uint64_t seed, gabor_run_metrics* out) {
    if (!ofdm || !ch || !out) return invalid("null pointer argument");
    return guarded([&] {
        const gabor::RunMetrics m =
            gabor::ber_simulation(ofdm->value, ch->value, n_frames, seed);
        out->orthogonality_error = m.orthogonality_error;
        out->mse = m.mse;
        out->sir_db = m.sir_db;
        out->ber = m.ber;
        out->ber_ci95 = m.ber_ci95;
        out->heisenberg_product = m.heisenberg_product;
        out->frame_bound_ratio = m.frame_bound_ratio;
        out->n_bits = m.n_bits;
        out->bit_errors = m.bit_errors;
    });
}

gabor_status gabor_ofdm_roundtrip(const gabor_ofdm* ofdm, uint64_t seed,
                                  double* max_symbol_error) {
    if (!ofdm || !max_symbol_error) return invalid("null pointer argument");
    return guarded([&] {
        gabor::SplitMix64 rng(gabor::derive_stream(seed, 0));
        const gabor::SymbolFrame tx = gabor::random_qpsk_frame(
            ofdm->value.n_symbols, ofdm->value.n_subcarriers, rng);
        const gabor::Signal s = gabor::modulate(ofdm->value, tx);
        const gabor::SymbolFrame rx = gabor::demodulate(ofdm->value, s);
        double worst = 0.0;
        for (std::size_t i = 0; i < tx.data.size(); ++i)
            worst = std::max(worst, std::abs(tx.data[i] - rx.data[i]));
        *max_symbol_error = worst;
    });
}

gabor_status gabor_tf_sweep(const gabor_signal* g, const int* p_list, const int* q_list,
                            int count, int K, gabor_table** out) {
    if (!g || !p_list || !q_list || !out) return invalid("null pointer argument");
    return guarded([&] {
        std::vector<std::pair<int, int>> pq;
        pq.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) pq.emplace_back(p_list[i], q_list[i]);
        *out = wrap(gabor::tf_tradeoff_sweep(g->value, pq, K));
    });
}

}  // extern "C"
