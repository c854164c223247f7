#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gabor/ofdm.hpp"

using namespace gabor;

namespace {

Grid wide_grid() { return Grid(-12 * 32, 1, 32, 24 * 32); }
Lattice benchmark_lattice() { return Lattice(1, 2, 32, 1, 32); }

OfdmConfig tight_tf2(int n_sub = 8, int n_sym = 4) {
    return build_ofdm(make_gaussian(wide_grid()), benchmark_lattice(), 6,
                      OfdmMode::ofdm_tight, n_sub, n_sym);
}

ChannelModel identity_channel() {
    return make_channel({ChannelTap{0, 0.0, cplx(1.0, 0.0)}}, 0.0, 0);
}

double qfunc(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

}  // namespace

TEST_CASE("ofdm construction: TF bookkeeping and orthogonality") {
    const OfdmConfig cfg = tight_tf2();
    CHECK(cfg.tf == doctest::Approx(2.0));
    CHECK(cfg.T == doctest::Approx(2.0));
    CHECK(cfg.F == doctest::Approx(1.0));
    CHECK(cfg.orthogonality_error <= 1e-7);
    CHECK(cfg.psi.norm() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cfg.frame_bound_ratio > 1.0);
}

TEST_CASE("TF = 1.3 system is constructible; critical TF is rejected") {
    const Grid grid(-12 * 160, 1, 160, 24 * 160);
    const Signal g = make_gaussian(grid);
    const Lattice lat(10, 13, 160, 1, 160);
    const OfdmConfig cfg = build_ofdm(g, lat, 8, OfdmMode::ofdm_tight, 8, 3);
    CHECK(cfg.tf == doctest::Approx(1.3));
    CHECK(cfg.frame_bound_ratio > 1.0);

    CHECK_THROWS_AS(build_ofdm(make_gaussian(wide_grid()),
                               Lattice(1, 1, 32, 1, 32), 6, OfdmMode::ofdm_tight, 8, 3),
                    Error);
}

TEST_CASE("modulate: single symbol is the pulse; superposition energy") {
    const OfdmConfig cfg = tight_tf2();
    SymbolFrame frame;
    frame.n_symbols = cfg.n_symbols;
    frame.n_subcarriers = cfg.n_subcarriers;
    frame.data.assign(static_cast<std::size_t>(cfg.n_symbols * cfg.n_subcarriers),
                      cplx(0.0, 0.0));
    frame.at(0, 0) = 1.0;
    const Signal s = modulate(cfg, frame);
    CHECK(std::abs(s.norm() - 1.0) < 1e-9);

    frame.at(0, 1) = 1.0;
    const Signal s2 = modulate(cfg, frame);
    CHECK(std::abs(s2.norm_squared() - 2.0) <= 4.0 * cfg.orthogonality_error + 1e-9);

    // full QPSK frame: burst energy = number of symbols
    SplitMix64 rng(5);
    const SymbolFrame full = random_qpsk_frame(cfg.n_symbols, cfg.n_subcarriers, rng);
    const Signal s3 = modulate(cfg, full);
    const double expect = static_cast<double>(cfg.n_symbols * cfg.n_subcarriers);
    CHECK(std::abs(s3.norm_squared() - expect) <=
          2.0 * cfg.orthogonality_error * expect + 1e-6);
}

TEST_CASE("channel: identity, pure delay, two-tap oracle, linearity") {
    const OfdmConfig cfg = tight_tf2();
    SplitMix64 rng(3);
    const SymbolFrame frame = random_qpsk_frame(cfg.n_symbols, cfg.n_subcarriers, rng);
    const Signal s = modulate(cfg, frame);

    // identity
    const Signal r_id = apply_channel(s, identity_channel());
    CHECK(l2_distance(r_id, s) == 0.0);

    // pure delay: exact sample shift
    const ChannelModel delay = make_channel({ChannelTap{5, 0.0, cplx(1.0, 0.0)}}, 0.0, 0);
    const Signal r_delay = apply_channel(s, delay);
    for (std::int64_t i = 5; i < s.length(); i += 97)
        CHECK(std::abs(r_delay[i] - s[i - 5]) == 0.0);

    // two-tap channel vs a brute-force per-sample oracle
    const ChannelModel two = make_channel(
        {ChannelTap{3, 1.5, cplx(0.8, 0.1)}, ChannelTap{11, -2.0, cplx(0.2, -0.4)}},
        0.0, 0);
    const Signal r_two = apply_channel(s, two);
    const double span = s.grid().span();
    double worst = 0.0;
    for (std::int64_t i = 0; i < s.length(); ++i) {
        cplx expect(0.0, 0.0);
        for (const auto& tap : two.taps) {
            const std::int64_t src = i - tap.delay_samples;
            if (src < 0 || src >= s.length()) continue;
            expect += tap.gain * s[src] *
                      std::polar(1.0, 2.0 * std::numbers::pi *
                                          (tap.doppler_cycles_per_grid / span) *
                                          s.time_at(i));
        }
        worst = std::max(worst, std::abs(expect - r_two[i]));
    }
    CHECK(worst < 1e-14);

    // linearity without noise
    const Signal sum = add(scale(s, cplx(0.3, 0.2)), scale(r_id, cplx(-1.1, 0.0)));
    const Signal lhs = apply_channel(sum, two);
    const Signal rhs = add(scale(apply_channel(s, two), cplx(0.3, 0.2)),
                           scale(apply_channel(r_id, two), cplx(-1.1, 0.0)));
    CHECK(l2_distance(lhs, rhs) < 1e-12);
}

TEST_CASE("channel gains are normalized to unit power by default") {
    const ChannelModel ch = make_channel(
        {ChannelTap{0, 0.0, cplx(3.0, 0.0)}, ChannelTap{4, 0.0, cplx(0.0, 4.0)}}, 0.0,
        0);
    double power = 0.0;
    for (const auto& tap : ch.taps) power += std::norm(tap.gain);
    CHECK(power == doctest::Approx(1.0).epsilon(1e-12));

    const ChannelModel raw = make_channel({ChannelTap{0, 0.0, cplx(3.0, 0.0)}}, 0.0, 0,
                                          /*normalize=*/false);
    CHECK(raw.taps[0].gain == cplx(3.0, 0.0));
}

TEST_CASE("demodulate inverts modulate through an ideal channel") {
    const OfdmConfig cfg = tight_tf2(16, 8);
    SplitMix64 rng(7);
    const SymbolFrame tx = random_qpsk_frame(cfg.n_symbols, cfg.n_subcarriers, rng);
    const SymbolFrame rx = demodulate(cfg, modulate(cfg, tx));
    double worst = 0.0;
    for (std::size_t i = 0; i < tx.data.size(); ++i)
        worst = std::max(worst, std::abs(tx.data[i] - rx.data[i]));
    CHECK(worst <= 1e-6);

    // r = phi_00 picks out c~_00 = 1
    SymbolFrame unit;
    unit.n_symbols = cfg.n_symbols;
    unit.n_subcarriers = cfg.n_subcarriers;
    unit.data.assign(tx.data.size(), cplx(0.0, 0.0));
    unit.at(0, 0) = 1.0;
    const SymbolFrame picked = demodulate(cfg, modulate(cfg, unit));
    CHECK(std::abs(picked.at(0, 0) - cplx(1.0, 0.0)) <= 1e-7);
    for (int k = 0; k < cfg.n_symbols; ++k)
        for (int l = 0; l < cfg.n_subcarriers; ++l) {
            if (k == 0 && l == 0) continue;
            CHECK(std::abs(picked.at(k, l)) <= cfg.orthogonality_error + 1e-9);
        }
}

TEST_CASE("BFDM pairing reconstructs through biorthogonality") {
    const OfdmConfig cfg = build_ofdm(make_gaussian(wide_grid()), benchmark_lattice(),
                                      6, OfdmMode::bfdm_dual, 8, 4);
    CHECK(cfg.orthogonality_error <= 1e-7);
    SplitMix64 rng(11);
    const SymbolFrame tx = random_qpsk_frame(cfg.n_symbols, cfg.n_subcarriers, rng);
    const SymbolFrame rx = demodulate(cfg, modulate(cfg, tx));
    double worst = 0.0;
    for (std::size_t i = 0; i < tx.data.size(); ++i)
        worst = std::max(worst, std::abs(tx.data[i] - rx.data[i]));
    CHECK(worst <= 1e-6);
}

TEST_CASE("interference analysis: identity channel sits at the orthogonality floor") {
    const OfdmConfig cfg = tight_tf2();
    const InterferenceResult r = interference_analysis(cfg, identity_channel());
    CHECK(r.sir_db >= 60.0);
    CHECK(r.leakage.rows() == 45);  // |k|<=2, |l|<=4
}

TEST_CASE("interference: delay-Doppler SIR is finite and reproducible") {
    const Grid grid(-12 * 160, 1, 160, 24 * 160);
    const Signal g = make_gaussian(grid);
    const Lattice lat(10, 13, 160, 1, 160);
    const OfdmConfig cfg = build_ofdm(g, lat, 8, OfdmMode::ofdm_tight, 8, 3);

    // tau = 0.1 T, nu = 0.1 F
    const std::int64_t delay = lat.inv_b_samples() / 10;
    const double doppler_cycles = 0.1 * cfg.F;  // converted per-grid below
    const ChannelModel ch = make_channel(
        {ChannelTap{delay, doppler_cycles * grid.span(), cplx(1.0, 0.0)}}, 0.0, 0);
    const double sir1 = interference_analysis(cfg, ch).sir_db;
    const double sir2 = interference_analysis(cfg, ch).sir_db;
    CHECK(sir1 == sir2);
    CHECK(std::isfinite(sir1));
    CHECK(sir1 > 0.0);
    CHECK(sir1 < 60.0);
}

TEST_CASE("SIR degrades monotonically with delay spread at TF=1.3") {
    const Grid grid(-12 * 160, 1, 160, 24 * 160);
    const Signal g = make_gaussian(grid);
    const Lattice lat(10, 13, 160, 1, 160);
    const OfdmConfig cfg = build_ofdm(g, lat, 8, OfdmMode::ofdm_tight, 8, 3);

    double prev = 1e300;
    for (int step = 0; step <= 4; ++step) {
        const std::int64_t delay = step * lat.inv_b_samples() / 8;  // 0 .. T/2
        const ChannelModel ch =
            make_channel({ChannelTap{delay, 0.0, cplx(1.0, 0.0)}}, 0.0, 0);
        const double sir = interference_analysis(cfg, ch).sir_db;
        CHECK(sir <= prev + 1e-9);
        prev = sir;
    }
}

TEST_CASE("BER: zero without noise, half at huge noise, Q-function at 10 dB") {
    const OfdmConfig cfg = tight_tf2(16, 8);

    const RunMetrics clean = ber_simulation(cfg, identity_channel(), 4, 7);
    CHECK(clean.ber == 0.0);
    CHECK(clean.mse < 1e-12);

    // sigma >> 1: coin-flip limit
    const ChannelModel loud =
        make_channel({ChannelTap{0, 0.0, cplx(1.0, 0.0)}}, 1e4, 0);
    const RunMetrics coin = ber_simulation(cfg, loud, 40, 7);
    CHECK(coin.ber == doctest::Approx(0.5).epsilon(0.1));

    // per-symbol SNR 10 dB: noise power on a demodulated symbol is
    // sigma^2 * dt, so sigma = sqrt(10^{-1} / dt); BER = Q(sqrt(SNR))
    const double snr = 10.0;
    const double sigma = std::sqrt(1.0 / (snr * cfg.burst.dt()));
    const ChannelModel awgn =
        make_channel({ChannelTap{0, 0.0, cplx(1.0, 0.0)}}, sigma, 0);
    const RunMetrics run = ber_simulation(cfg, awgn, 500, 3);
    const double expected = qfunc(std::sqrt(snr));
    CHECK(std::abs(run.ber - expected) <= 0.2 * expected);
}

TEST_CASE("identical seeds give bit-identical metrics") {
    const OfdmConfig cfg = tight_tf2(8, 4);
    const ChannelModel ch = make_channel(
        {ChannelTap{3, 0.5, cplx(0.9, 0.1)}, ChannelTap{9, -1.0, cplx(0.1, 0.2)}}, 0.05,
        0);
    const RunMetrics a = ber_simulation(cfg, ch, 10, 99);
    const RunMetrics b = ber_simulation(cfg, ch, 10, 99);
    CHECK(a.ber == b.ber);
    CHECK(a.mse == b.mse);
    CHECK(a.bit_errors == b.bit_errors);
    CHECK(a.sir_db == b.sir_db);
    const RunMetrics c = ber_simulation(cfg, ch, 10, 100);
    CHECK(c.mse != a.mse);
}

TEST_CASE("QPSK Gray mapping matches the documented table") {
    const double s = 1.0 / std::numbers::sqrt2;
    CHECK(qpsk_symbol(false, false) == cplx(s, s));
    CHECK(qpsk_symbol(false, true) == cplx(-s, s));
    CHECK(qpsk_symbol(true, true) == cplx(-s, -s));
    CHECK(qpsk_symbol(true, false) == cplx(s, -s));
    bool a = false, b = false;
    qpsk_bits(cplx(-0.3, 0.8), a, b);
    CHECK(a == false);
    CHECK(b == true);
}

TEST_CASE("tf sweep rows are ordered and trend the right way") {
    const Grid grid(-12 * 160, 1, 160, 24 * 160);
    const Signal g = make_gaussian(grid);
    const Table sweep = tf_tradeoff_sweep(g, {{1, 2}, {10, 13}}, 8);
    REQUIRE(sweep.rows() == 2);
    const auto tf = sweep.column(sweep.column_index("tf"));
    CHECK(tf[0] == doctest::Approx(1.3));
    CHECK(tf[1] == doctest::Approx(2.0));
    const auto ratio = sweep.column(sweep.column_index("b_over_a"));
    CHECK(ratio[0] > ratio[1]);  // B/A grows as TF drops
    const auto dist = sweep.column(sweep.column_index("window_distance"));
    CHECK(dist[0] > dist[1]);
    CHECK(dist[1] < 0.2);
}
