#include "gabor/ofdm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gabor/gram.hpp"
#include "gabor/laurent.hpp"
#include "gabor/parallel.hpp"

namespace gabor {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Effective pulse radius: largest |t| where the amplitude still exceeds
// 1e-9 of the peak.
double effective_radius(const Signal& psi) {
    double peak = 0.0;
    for (std::int64_t i = 0; i < psi.length(); ++i)
        peak = std::max(peak, std::abs(psi[i]));
    double radius = 0.0;
    for (std::int64_t i = 0; i < psi.length(); ++i)
        if (std::abs(psi[i]) > 1e-9 * peak)
            radius = std::max(radius, std::abs(psi.time_at(i)));
    return radius;
}

// Places pulse(t - k T) e^{2 pi i t l F} on the burst grid.
void fill_atom(Eigen::MatrixXcd& bank, Eigen::Index column, const Signal& pulse,
               const Grid& burst, std::int64_t shift_samples, double freq) {
    for (std::int64_t i = 0; i < burst.length; ++i) {
        const std::int64_t src =
            burst.t0_samples + i - shift_samples - pulse.grid().t0_samples;
        if (src < 0 || src >= pulse.length()) {
            bank(i, column) = cplx(0.0, 0.0);
            continue;
        }
        bank(i, column) =
            pulse[src] * std::polar(1.0, two_pi * freq * burst.time_at(i));
    }
}

// Deviation of <psi_{k/b,l/a}, phi> from the Kronecker delta over
// |k|,|l| <= 3; covers both the orthonormal and the biorthogonal pairing.
double adjoint_orthogonality_error(const Signal& psi, const Signal& phi,
                                   const Lattice& lat) {
    const LatticeSteps steps = lattice_steps(lat, LatticeKind::adjoint);
    double worst = 0.0;
    for (std::int64_t k = -3; k <= 3; ++k)
        for (std::int64_t l = -3; l <= 3; ++l) {
            cplx v = inner_product(lattice_atom(psi, steps, k, l), phi);
            if (k == 0 && l == 0) v -= 1.0;
            worst = std::max(worst, std::abs(v));
        }
    return worst;
}

}  // namespace

cplx qpsk_symbol(bool bit_a, bool bit_b) {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    return cplx(bit_b ? -inv_sqrt2 : inv_sqrt2, bit_a ? -inv_sqrt2 : inv_sqrt2);
}

void qpsk_bits(cplx received, bool& bit_a, bool& bit_b) {
    bit_b = received.real() < 0.0;
    bit_a = received.imag() < 0.0;
}

SymbolFrame random_qpsk_frame(int n_symbols, int n_subcarriers, SplitMix64& rng) {
    SymbolFrame frame;
    frame.n_symbols = n_symbols;
    frame.n_subcarriers = n_subcarriers;
    frame.constellation = Constellation::qpsk;
    frame.data.resize(static_cast<std::size_t>(n_symbols) *
                      static_cast<std::size_t>(n_subcarriers));
    for (auto& c : frame.data) {
        const bool a = rng.next_bit();
        const bool b = rng.next_bit();
        c = qpsk_symbol(a, b);
    }
    return frame;
}

OfdmConfig build_ofdm(const Signal& g, const Lattice& lat, int K, OfdmMode mode,
                      int n_subcarriers, int n_symbols, double guard_seconds) {
    lat.require_compatible(g.grid());
    if (lat.regime() != FrameRegime::oversampled)
        fail(ErrorCode::not_a_frame,
             "OFDM construction needs ab = p/q < 1 (Balian-Low excludes ab >= 1)");
    if (n_subcarriers < 1 || n_symbols < 1)
        fail(ErrorCode::invalid_params, "subcarrier and symbol counts must be positive");
    // Carrier l = n_subcarriers - 1 must stay below the grid Nyquist rate.
    const double f_max = static_cast<double>(n_subcarriers - 1) / lat.a();
    if (f_max >= 0.5 / g.dt() + 1e-12)
        fail(ErrorCode::invalid_params, "carrier frequencies exceed the grid Nyquist rate");

    const FrameBoundsResult fb = frame_bounds(g, lat, K);
    if (!fb.is_frame) fail(ErrorCode::not_a_frame, "generating system is not a frame");

    Signal psi = (mode == OfdmMode::ofdm_tight)
                     ? tight_window(g, lat, K, /*unit_norm=*/true).window
                     : normalized(g);
    Signal phi = psi;
    if (mode == OfdmMode::bfdm_dual) {
        const Signal dual = canonical_dual_laurent(g, lat, K);
        // <psi, phi> = 1: phi = dual * ||g|| / ab (Wexler-Raz gives
        // <dual, g> = ab).
        phi = scale(dual, g.norm() / lat.ab());
    }

    OfdmConfig cfg{lat,
                   mode,
                   lat.inv_b(),
                   lat.inv_a(),
                   lat.tf(),
                   n_subcarriers,
                   n_symbols,
                   psi,
                   phi,
                   0.0,
                   fb.B / fb.A,
                   localization(psi),
                   Grid(0, 1, 1, 1),
                   Eigen::MatrixXcd(),
                   Eigen::MatrixXcd()};

    cfg.orthogonality_error = adjoint_orthogonality_error(psi, phi, lat);

    // Burst grid: all symbol slots plus pulse tails plus the channel guard.
    const double radius =
        std::max(effective_radius(psi), effective_radius(phi));
    const double lead = 4.0 * radius + guard_seconds;
    const double dt = g.dt();
    const std::int64_t t_begin =
        -static_cast<std::int64_t>(std::ceil(lead / dt));
    const std::int64_t t_end =
        static_cast<std::int64_t>(n_symbols - 1) * lat.inv_b_samples() +
        static_cast<std::int64_t>(std::ceil(lead / dt));
    cfg.burst = Grid(t_begin, g.grid().dt_num, g.grid().dt_den, t_end - t_begin + 1);

    const Eigen::Index n_atoms =
        static_cast<Eigen::Index>(n_symbols) * static_cast<Eigen::Index>(n_subcarriers);
    cfg.atoms_tx.resize(cfg.burst.length, n_atoms);
    cfg.atoms_rx.resize(cfg.burst.length, n_atoms);
    for (int k = 0; k < n_symbols; ++k)
        for (int l = 0; l < n_subcarriers; ++l) {
            const Eigen::Index col =
                static_cast<Eigen::Index>(k) * n_subcarriers + l;
            const std::int64_t shift = static_cast<std::int64_t>(k) * lat.inv_b_samples();
            const double freq = static_cast<double>(l) * cfg.F;
            fill_atom(cfg.atoms_tx, col, psi, cfg.burst, shift, freq);
            fill_atom(cfg.atoms_rx, col, phi, cfg.burst, shift, freq);
        }
    return cfg;
}

ChannelModel make_channel(std::vector<ChannelTap> taps, double noise_sigma,
                          std::uint64_t rng_seed, bool normalize_gains) {
    if (noise_sigma < 0.0)
        fail(ErrorCode::invalid_params, "noise sigma must be >= 0");
    ChannelModel ch{std::move(taps), noise_sigma, rng_seed, normalize_gains};
    if (ch.normalize_gains && !ch.taps.empty()) {
        double power = 0.0;
        for (const auto& tap : ch.taps) power += std::norm(tap.gain);
        if (power <= 0.0)
            fail(ErrorCode::invalid_params, "channel taps carry no power");
        const double s = 1.0 / std::sqrt(power);
        for (auto& tap : ch.taps) tap.gain *= s;
    }
    return ch;
}

namespace {

Signal apply_channel_stream(const Signal& s, const ChannelModel& ch, SplitMix64& rng,
                            bool with_noise) {
    const Grid& g = s.grid();
    std::vector<cplx> out(static_cast<std::size_t>(g.length), cplx(0.0, 0.0));
    const double span = g.span();
    for (const auto& tap : ch.taps) {
        const double nu = tap.doppler_cycles_per_grid / span;
        for (std::int64_t i = 0; i < g.length; ++i) {
            const std::int64_t src = i - tap.delay_samples;
            if (src < 0 || src >= g.length) continue;
            out[static_cast<std::size_t>(i)] +=
                tap.gain * s[src] * std::polar(1.0, two_pi * nu * g.time_at(i));
        }
    }
    if (with_noise && ch.noise_sigma > 0.0) {
        const double comp = ch.noise_sigma / std::numbers::sqrt2;
        for (auto& v : out) v += cplx(comp * rng.normal(), comp * rng.normal());
    }
    return Signal(g, std::move(out));
}

}  // namespace

Signal apply_channel(const Signal& s, const ChannelModel& ch) {
    SplitMix64 rng(derive_stream(ch.rng_seed, 0));
    return apply_channel_stream(s, ch, rng, true);
}

Signal modulate(const OfdmConfig& cfg, const SymbolFrame& frame) {
    if (frame.n_symbols != cfg.n_symbols || frame.n_subcarriers != cfg.n_subcarriers)
        fail(ErrorCode::invalid_params, "symbol frame does not match the OFDM grid");
    Eigen::Map<const Eigen::VectorXcd> c(frame.data.data(),
                                         static_cast<Eigen::Index>(frame.data.size()));
    const Eigen::VectorXcd s = cfg.atoms_tx * c;
    return Signal(cfg.burst, std::vector<cplx>(s.data(), s.data() + s.size()));
}

SymbolFrame demodulate(const OfdmConfig& cfg, const Signal& r) {
    if (r.grid() != cfg.burst)
        fail(ErrorCode::grid_mismatch, "received signal is not on the burst grid");
    Eigen::Map<const Eigen::VectorXcd> rv(r.samples().data(),
                                          static_cast<Eigen::Index>(r.length()));
    const Eigen::VectorXcd c = (cfg.atoms_rx.adjoint() * rv) * r.dt();
    SymbolFrame frame;
    frame.n_symbols = cfg.n_symbols;
    frame.n_subcarriers = cfg.n_subcarriers;
    frame.constellation = Constellation::arbitrary;
    frame.data.assign(c.data(), c.data() + c.size());
    return frame;
}

InterferenceResult interference_analysis(const OfdmConfig& cfg, const ChannelModel& ch) {
    // Dedicated grid around psi_00 covering the probed symbol offsets.
    const double radius = std::max(effective_radius(cfg.psi), effective_radius(cfg.phi));
    const double dt = cfg.psi.dt();
    std::int64_t max_delay = 0;
    for (const auto& tap : ch.taps)
        max_delay = std::max(max_delay, std::abs(tap.delay_samples));
    const std::int64_t lead =
        2 * cfg.lat.inv_b_samples() +
        static_cast<std::int64_t>(std::ceil(4.0 * radius / dt)) + max_delay;
    Grid grid(-lead, cfg.psi.grid().dt_num, cfg.psi.grid().dt_den, 2 * lead + 1);

    // psi_00 through the noiseless channel.
    Eigen::MatrixXcd psi_bank(grid.length, 1);
    fill_atom(psi_bank, 0, cfg.psi, grid, 0, 0.0);
    std::vector<cplx> psi_samples(psi_bank.data(), psi_bank.data() + grid.length);
    SplitMix64 rng(0);
    const Signal transmitted(grid, std::move(psi_samples));
    const Signal received = apply_channel_stream(transmitted, ch, rng, false);

    Table leakage({"k", "l", "re", "im", "abs2"});
    double signal_power = 0.0, interference = 0.0;
    Eigen::MatrixXcd atom(grid.length, 1);
    for (std::int64_t k = -2; k <= 2; ++k)
        for (std::int64_t l = -4; l <= 4; ++l) {
            fill_atom(atom, 0, cfg.phi, grid, k * cfg.lat.inv_b_samples(),
                      static_cast<double>(l) * cfg.F);
            std::vector<cplx> atom_samples(atom.data(), atom.data() + grid.length);
            const cplx L = inner_product(received, Signal(grid, std::move(atom_samples)));
            leakage.add_row({Table::Cell::number_cell(static_cast<double>(k)),
                             Table::Cell::number_cell(static_cast<double>(l)),
                             Table::Cell::number_cell(L.real()),
                             Table::Cell::number_cell(L.imag()),
                             Table::Cell::number_cell(std::norm(L))});
            if (k == 0 && l == 0)
                signal_power = std::norm(L);
            else
                interference += std::norm(L);
        }
    const double sir_db =
        10.0 * std::log10(signal_power / std::max(interference, 1e-30));
    return InterferenceResult{sir_db, std::move(leakage)};
}

RunMetrics ber_simulation(const OfdmConfig& cfg, const ChannelModel& ch, int n_frames,
                          std::uint64_t seed) {
    if (n_frames < 1) fail(ErrorCode::invalid_params, "need at least one frame");

    // Per-subcarrier one-tap gains from the noiseless channel response.
    std::vector<cplx> gains(static_cast<std::size_t>(cfg.n_subcarriers));
    {
        Eigen::MatrixXcd atom(cfg.burst.length, 1);
        SplitMix64 rng(0);
        for (int l = 0; l < cfg.n_subcarriers; ++l) {
            fill_atom(atom, 0, cfg.psi, cfg.burst, 0, static_cast<double>(l) * cfg.F);
            std::vector<cplx> samples(atom.data(), atom.data() + cfg.burst.length);
            const Signal through =
                apply_channel_stream(Signal(cfg.burst, std::move(samples)), ch, rng, false);
            fill_atom(atom, 0, cfg.phi, cfg.burst, 0, static_cast<double>(l) * cfg.F);
            std::vector<cplx> rx(atom.data(), atom.data() + cfg.burst.length);
            gains[static_cast<std::size_t>(l)] =
                inner_product(through, Signal(cfg.burst, std::move(rx)));
        }
    }

    struct FrameStats {
        std::int64_t bit_errors = 0;
        double mse_sum = 0.0;
    };
    std::vector<FrameStats> stats(static_cast<std::size_t>(n_frames));

    parallel_for(0, n_frames, [&](std::int64_t f) {
        SplitMix64 data_rng(derive_stream(seed, 2 * static_cast<std::uint64_t>(f)));
        SplitMix64 noise_rng(derive_stream(seed, 2 * static_cast<std::uint64_t>(f) + 1));
        const SymbolFrame tx = random_qpsk_frame(cfg.n_symbols, cfg.n_subcarriers, data_rng);
        const Signal s = modulate(cfg, tx);
        const Signal r = apply_channel_stream(s, ch, noise_rng, true);
        const SymbolFrame rx = demodulate(cfg, r);

        FrameStats fs;
        for (int k = 0; k < cfg.n_symbols; ++k)
            for (int l = 0; l < cfg.n_subcarriers; ++l) {
                const cplx gain = gains[static_cast<std::size_t>(l)];
                const cplx eq = rx.at(k, l) * std::conj(gain) / std::norm(gain);
                fs.mse_sum += std::norm(eq - tx.at(k, l));
                bool ta, tb, ra, rb;
                qpsk_bits(tx.at(k, l), ta, tb);
                qpsk_bits(eq, ra, rb);
                fs.bit_errors += (ta != ra) + (tb != rb);
            }
        stats[static_cast<std::size_t>(f)] = fs;
    });

    RunMetrics metrics;
    metrics.orthogonality_error = cfg.orthogonality_error;
    metrics.heisenberg_product = cfg.psi_localization.heisenberg_product;
    metrics.frame_bound_ratio = cfg.frame_bound_ratio;
    const std::int64_t symbols_per_frame =
        static_cast<std::int64_t>(cfg.n_symbols) * cfg.n_subcarriers;
    metrics.n_bits = 2 * symbols_per_frame * n_frames;
    double mse_total = 0.0;
    for (const auto& fs : stats) {
        metrics.bit_errors += fs.bit_errors;
        mse_total += fs.mse_sum;
    }
    metrics.mse = mse_total / static_cast<double>(symbols_per_frame * n_frames);
    metrics.ber = static_cast<double>(metrics.bit_errors) /
                  static_cast<double>(metrics.n_bits);
    metrics.ber_ci95 = 1.96 * std::sqrt(std::max(metrics.ber * (1.0 - metrics.ber), 0.0) /
                                        static_cast<double>(metrics.n_bits));
    metrics.sir_db = interference_analysis(cfg, ch).sir_db;
    return metrics;
}

Table tf_tradeoff_sweep(const Signal& g, const std::vector<std::pair<int, int>>& pq_list,
                        int K) {
    std::vector<std::pair<int, int>> sorted = pq_list;
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
        // ascending TF = q/p
        return static_cast<double>(x.second) * y.first <
               static_cast<double>(y.second) * x.first;
    });

    Table table({"tf", "p", "q", "b_over_a", "heisenberg_tight", "window_distance",
                 "orthogonality_error", "sir_identity_db"});
    const Signal g_unit = normalized(g);
    for (const auto& [p, q] : sorted) {
        const Lattice lat(p, q, g.grid().dt_den, g.grid().dt_num, g.grid().dt_den);
        const FrameBoundsResult fb = frame_bounds(g, lat, K);
        if (!fb.is_frame)
            fail(ErrorCode::not_a_frame, "sweep entry is not a frame");
        const Signal tight = tight_window(g, lat, K, /*unit_norm=*/true).window;
        const Localization loc = localization(tight);
        const double distance = l2_distance(g_unit, tight);

        OfdmConfig cfg = build_ofdm(g, lat, K, OfdmMode::ofdm_tight, 8, 3);
        const ChannelModel identity = make_channel({ChannelTap{0, 0.0, cplx(1.0, 0.0)}},
                                                   0.0, 0);
        const double sir = interference_analysis(cfg, identity).sir_db;

        table.add_row({Table::Cell::number_cell(lat.tf()),
                       Table::Cell::number_cell(p),
                       Table::Cell::number_cell(q),
                       Table::Cell::number_cell(fb.B / fb.A),
                       Table::Cell::number_cell(loc.heisenberg_product),
                       Table::Cell::number_cell(distance),
                       Table::Cell::number_cell(cfg.orthogonality_error),
                       Table::Cell::number_cell(sir)});
    }
    return table;
}

}  // namespace gabor
