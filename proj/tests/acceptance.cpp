// Acceptance suite: one check per criterion, each printed as a PASS/FAIL
// line with the measured values. Exit code is the number of failures.
//
// Benchmark: unit gaussian on [-12, 12), dt = 1/32, lattice a = 1, b = 1/2
// unless stated. The determinism criterion shells the CLI binary named by
// the GABOR_CLI environment variable.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gabor/dual.hpp"
#include "gabor/gram.hpp"
#include "gabor/laurent.hpp"
#include "gabor/ofdm.hpp"
#include "gabor/rng.hpp"
#include "gabor/signal.hpp"

using namespace gabor;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
    std::printf("%-34s %s  %s\n", name.c_str(), pass ? "PASS" : "FAIL",
                detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

Grid bench_grid(std::int64_t den = 32) { return Grid(-12 * den, 1, den, 24 * den); }

struct LinearFit {
    double slope;
    double r2;
};

LinearFit line_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (my + slope * (x[i] - mx));
        ss_res += r * r;
    }
    return LinearFit{slope, syy > 0 ? 1.0 - ss_res / syy : 1.0};
}

// ------------------------------------------------------------------ //

void criterion_01() {
    const Signal r = make_rectangular(bench_grid(), 32);
    const Lattice lat(1, 1, 32, 1, 32);
    const Signal gamma = finite_section_dual(r, lat, 3);
    const double wr = wexler_raz_residual(gamma, r, lat, 3);
    const FrameBoundsResult fb = frame_bounds(r, lat, 3);
    const Signal f = add(r, scale(lattice_atom(r, lattice_steps(lat, LatticeKind::frame),
                                               1, 1),
                                  cplx(0.0, 0.5)));
    const double rec = reconstruct(f, r, gamma, lat, 4).rel_error;
    const bool pass = wr <= 1e-10 && std::abs(fb.A - 1.0) <= 1e-10 &&
                      std::abs(fb.B - 1.0) <= 1e-10 && rec <= 1e-10;
    report("C01 orthonormal-sanity", pass,
           "wr=" + fmt(wr) + " |A-1|=" + fmt(std::abs(fb.A - 1.0)) +
               " |B-1|=" + fmt(std::abs(fb.B - 1.0)) + " rec=" + fmt(rec));
}

void criterion_02(const Signal& g, const Lattice& lat) {
    const Signal gamma = finite_section_dual(g, lat, 8);
    const double wr = wexler_raz_residual(gamma, g, lat, 4);
    const double ip_err = std::abs(inner_product(gamma, g) - cplx(0.5, 0.0));
    const bool pass = wr <= 1e-6 && ip_err <= 1e-6;
    report("C02 wexler-raz-biorthogonality", pass,
           "wr=" + fmt(wr) + " |<gamma,g>-0.5|=" + fmt(ip_err));
}

void criterion_03_04(const Signal& g, const Lattice& lat) {
    const std::vector<int> n_list{1, 2, 3, 4, 5, 6, 7, 8};
    const Table study = convergence_study(g, lat, n_list, 12, 4);
    const auto err = study.column(study.column_index("error_l2"));
    const auto cond = study.column(study.column_index("cond"));

    bool decreasing = true;
    for (std::size_t i = 2; i < err.size(); ++i)
        if (!(err[i] < err[i - 1])) decreasing = false;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < err.size(); ++i) {
        xs.push_back(static_cast<double>(n_list[i]));
        ys.push_back(std::log(err[i]));
    }
    const LinearFit fit = line_fit(xs, ys);
    const bool pass3 = decreasing && fit.r2 >= 0.95 && fit.slope < 0.0;
    report("C03 finite-section-convergence", pass3,
           std::string("strictly_decreasing=") + (decreasing ? "yes" : "no") +
               " R2=" + fmt(fit.r2) + " slope=" + fmt(fit.slope));

    bool nondecreasing = true;
    for (std::size_t i = 1; i < cond.size(); ++i)
        if (cond[i] < cond[i - 1] * (1.0 - 1e-12)) nondecreasing = false;
    const RieszBounds riesz = adjoint_riesz_bounds(g, lat, 8);
    const double worst = *std::max_element(cond.begin(), cond.end());
    const bool pass4 = nondecreasing && worst <= 1.05 * riesz.ratio();
    report("C04 conditioning", pass4,
           std::string("non_decreasing=") + (nondecreasing ? "yes" : "no") +
               " max_cond=" + fmt(worst) + " bound=" + fmt(1.05 * riesz.ratio()));
}

void criterion_05(const Signal& g, const Lattice& lat) {
    const Signal fs = finite_section_dual(g, lat, 10);
    const Signal laurent = canonical_dual_laurent(g, lat, 8);
    const double rel = l2_distance(fs, laurent) / laurent.norm();
    report("C05 cross-method-agreement", rel <= 1e-5, "rel_l2=" + fmt(rel));
}

void criterion_06(const Signal& g, const Lattice& lat) {
    const Signal tight = tight_window(g, lat, 8, /*unit_norm=*/true).window;
    const FrameBoundsResult fb = frame_bounds(tight, lat, 8);
    const double ratio = fb.B / fb.A;

    const LatticeSteps adj = lattice_steps(lat, LatticeKind::adjoint);
    const double diag_err = std::abs(inner_product(tight, tight) - cplx(1.0, 0.0));
    double off = 0.0;
    for (int k = -3; k <= 3; ++k)
        for (int l = -3; l <= 3; ++l) {
            if (k == 0 && l == 0) continue;
            off = std::max(off, std::abs(inner_product(lattice_atom(tight, adj, k, l),
                                                       tight)));
        }
    const bool pass = ratio <= 1.0 + 1e-8 && off <= 1e-7 && diag_err <= 1e-9;
    report("C06 tightness", pass,
           "B/A-1=" + fmt(ratio - 1.0) + " max_offdiag=" + fmt(off) +
               " |<g~,g~>-1|=" + fmt(diag_err));
}

void criterion_07(const Signal& g, const Lattice& lat) {
    // Probe signal: random coefficients over frame atoms of radius 4 (inside
    // every section tested); data precision delta perturbs the coefficient
    // data inside the solver.
    const std::uint64_t seed = 7;
    SplitMix64 rng(derive_stream(seed, 0));
    const LatticeSteps steps = lattice_steps(lat, LatticeKind::frame);
    std::vector<cplx> acc(static_cast<std::size_t>(g.length()), cplx(0.0, 0.0));
    for (int k = -4; k <= 4; ++k)
        for (int l = -4; l <= 4; ++l) {
            const cplx c(rng.normal(), rng.normal());
            const Signal atom = lattice_atom(g, steps, k, l);
            for (std::int64_t i = 0; i < g.length(); ++i)
                acc[static_cast<std::size_t>(i)] += c * atom[i];
        }
    const Signal f(g.grid(), std::move(acc));

    TsvdConfig plain;
    plain.delta = 1e-8;
    plain.smoothness_p = 1;
    plain.threshold_override = 0.0;
    plain.data_noise_seed = seed + 1;
    TsvdConfig reg = plain;
    reg.threshold_override.reset();

    const TsvdResult u2 = tsvd_solve(g, lat, f, 2, plain);
    const TsvdResult u8 = tsvd_solve(g, lat, f, 8, plain);
    const TsvdResult t2 = tsvd_solve(g, lat, f, 2, reg);
    const TsvdResult t8 = tsvd_solve(g, lat, f, 8, reg);

    const double growth = u8.coeff_norm / u2.coeff_norm;
    const double bounded = t8.coeff_norm / t2.coeff_norm;
    const bool pass = growth >= 10.0 && bounded <= 2.0 && t8.rel_error <= 1e-3;
    report("C07 tsvd-divergence-vs-threshold", pass,
           "plain_growth=" + fmt(growth) + " thresh_ratio=" + fmt(bounded) +
               " rec_err=" + fmt(t8.rel_error));
}

void criterion_08(const Signal& g, const Lattice& lat) {
    const Signal gamma = canonical_dual_laurent(g, lat, 8);
    const Signal tight = tight_window(g, lat, 8).window;

    const DecayFit fit_g = decay_envelope_fit(g, DecayModel::exponential);
    const DecayFit fit_gamma = decay_envelope_fit(gamma, DecayModel::exponential);
    const DecayFit fit_tight = decay_envelope_fit(tight, DecayModel::exponential);

    const Weight poly = Weight::polynomial(2.0);
    const bool tails = weighted_tail_converged(g, poly) &&
                       weighted_tail_converged(gamma, poly) &&
                       weighted_tail_converged(tight, poly);

    const bool pass = fit_gamma.fit_quality >= 0.98 && fit_tight.fit_quality >= 0.98 &&
                      fit_gamma.rate < fit_g.rate && tails;
    report("C08 decay-preservation", pass,
           "R2_gamma=" + fmt(fit_gamma.fit_quality) +
               " R2_tight=" + fmt(fit_tight.fit_quality) + " rate_gamma=" +
               fmt(fit_gamma.rate) + " rate_g=" + fmt(fit_g.rate) +
               std::string(tails ? " tails=ok" : " tails=bad"));
}

void criterion_09(const Signal& g) {
    double lo = 1e300, hi = 0.0;
    for (int k = -4; k <= 4; ++k)
        for (int l = -8; l <= 8; ++l) {
            const double tau = k;
            const double omega = 0.5 * l;
            const double v =
                std::abs(stft_point(g, g, 32 * k, omega)) *
                std::exp(std::numbers::pi * (tau * tau + omega * omega) / 2.0);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const bool pass = lo >= 0.999 && hi <= 1.001;
    report("C09 stft-decay-shape", pass, "range=[" + fmt(lo) + "," + fmt(hi) + "]");
}

void criterion_10(const Signal& g, const Lattice& lat) {
    const OfdmConfig cfg = build_ofdm(g, lat, 8, OfdmMode::ofdm_tight, 16, 8);
    SplitMix64 rng(derive_stream(7, 0));
    const SymbolFrame tx = random_qpsk_frame(cfg.n_symbols, cfg.n_subcarriers, rng);
    const SymbolFrame rx = demodulate(cfg, modulate(cfg, tx));
    double worst = 0.0;
    for (std::size_t i = 0; i < tx.data.size(); ++i)
        worst = std::max(worst, std::abs(tx.data[i] - rx.data[i]));

    const ChannelModel identity = make_channel({ChannelTap{0, 0.0, cplx(1.0, 0.0)}},
                                               0.0, 0);
    const RunMetrics metrics = ber_simulation(cfg, identity, 8, 7);
    const bool pass = worst <= 1e-6 && metrics.ber == 0.0;
    report("C10 ofdm-end-to-end", pass,
           "max_symbol_err=" + fmt(worst) + " ber=" + fmt(metrics.ber) +
               " bits=" + std::to_string(metrics.n_bits));
}

void criterion_11() {
    const Grid grid = bench_grid(320);
    const Lattice lat(10, 13, 320, 1, 320);
    const Signal gauss = make_gaussian(grid);
    const Signal rect = make_rectangular(grid, 416);  // width T = 1.3 s
    const ChannelModel delay =
        make_channel({ChannelTap{52, 0.0, cplx(1.0, 0.0)}}, 0.0, 0);  // 0.125 T

    const OfdmConfig cfg_g = build_ofdm(gauss, lat, 8, OfdmMode::ofdm_tight, 8, 3);
    const OfdmConfig cfg_r = build_ofdm(rect, lat, 8, OfdmMode::ofdm_tight, 8, 3);
    const double sir_g = interference_analysis(cfg_g, delay).sir_db;
    const double sir_r = interference_analysis(cfg_r, delay).sir_db;
    const bool pass = sir_g - sir_r >= 3.0;
    report("C11 localization-pays", pass,
           "sir_gauss=" + fmt(sir_g) + "dB sir_rect=" + fmt(sir_r) + "dB margin=" +
               fmt(sir_g - sir_r) + "dB");
}

void criterion_12() {
    const Grid grid = bench_grid(320);
    const Signal g = make_gaussian(grid);
    const Table sweep =
        tf_tradeoff_sweep(g, {{1, 2}, {2, 3}, {10, 13}, {10, 11}}, 8);
    const auto tf = sweep.column(sweep.column_index("tf"));
    const auto ratio = sweep.column(sweep.column_index("b_over_a"));
    const auto dist = sweep.column(sweep.column_index("window_distance"));
    const auto heis = sweep.column(sweep.column_index("heisenberg_tight"));

    // rows sorted by TF ascending: 1.1, 1.3, 1.5, 2.0
    bool ratio_up = true, dist_up = true;
    for (std::size_t i = 1; i < tf.size(); ++i) {
        if (!(ratio[i - 1] > ratio[i])) ratio_up = false;
        if (!(dist[i - 1] > dist[i])) dist_up = false;
    }
    const bool heis_worse = heis.front() > heis.back();
    const bool pass = ratio_up && dist_up && heis_worse;
    report("C12 tf-tradeoff", pass,
           std::string("B/A_increasing_as_TF_drops=") + (ratio_up ? "yes" : "no") +
               " dist_increasing=" + (dist_up ? "yes" : "no") +
               " heis(1.1)=" + fmt(heis.front()) + " heis(2.0)=" + fmt(heis.back()));
}

std::string strip_timestamps(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string out, line;
    while (std::getline(in, line))
        if (line.find("timestamp") == std::string::npos) out += line + "\n";
    return out;
}

void criterion_13() {
    const char* cli = std::getenv("GABOR_CLI");
    if (!cli) {
        report("C13 determinism", false, "GABOR_CLI not set");
        return;
    }
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "gabor_acceptance_repro";
    fs::remove_all(base);
    fs::create_directories(base);
    const std::string dir_a = (base / "a").string();
    const std::string dir_b = (base / "b").string();
    const std::string cmd_a = std::string("\"") + cli + "\" reproduce-all --out-dir \"" +
                              dir_a + "\" --seed 7 > /dev/null 2>&1";
    const std::string cmd_b = std::string("\"") + cli + "\" reproduce-all --out-dir \"" +
                              dir_b + "\" --seed 7 > /dev/null 2>&1";
    if (std::system(cmd_a.c_str()) != 0 || std::system(cmd_b.c_str()) != 0) {
        report("C13 determinism", false, "reproduce-all run failed");
        return;
    }
    std::size_t files = 0, mismatches = 0;
    for (const auto& entry : fs::directory_iterator(dir_a)) {
        ++files;
        const fs::path other = fs::path(dir_b) / entry.path().filename();
        if (!fs::exists(other) ||
            strip_timestamps(entry.path().string()) != strip_timestamps(other.string()))
            ++mismatches;
    }
    const bool pass = files > 0 && mismatches == 0;
    report("C13 determinism", pass,
           std::to_string(files) + " files compared, " + std::to_string(mismatches) +
               " mismatches (timestamp lines excluded)");
}

}  // namespace

int main() {
    const Signal g = make_gaussian(bench_grid());
    const Lattice lat(1, 2, 32, 1, 32);

    criterion_01();
    criterion_02(g, lat);
    criterion_03_04(g, lat);
    criterion_05(g, lat);
    criterion_06(g, lat);
    criterion_07(g, lat);
    criterion_08(g, lat);
    criterion_09(g);
    criterion_10(g, lat);
    criterion_11();
    criterion_12();
    criterion_13();

    std::printf("\n%d criterion check(s) failed\n", g_failures);
    return g_failures;
}
