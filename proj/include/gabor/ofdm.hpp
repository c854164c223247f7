#ifndef GABOR_OFDM_HPP
#define GABOR_OFDM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gabor/lattice.hpp"
#include "gabor/rng.hpp"
#include "gabor/signal.hpp"
#include "gabor/table.hpp"

namespace gabor {

enum class OfdmMode {
    ofdm_tight,  // psi = phi = unit-normalized tight window
    bfdm_dual    // psi = g/||g||, phi = dual scaled so <psi_00, phi_00> = 1
};

// Transceiver built on the adjoint lattice of (g, a, b): T = 1/b, F = 1/a,
// TF = q/p > 1. Carries precomputed transmit/receive atom banks on a guarded
// burst grid. Immutable after construction.
struct OfdmConfig {
    Lattice lat;
    OfdmMode mode;
    double T = 0.0;
    double F = 0.0;
    double tf = 0.0;
    int n_subcarriers = 0;
    int n_symbols = 0;
    Signal psi;  // transmit pulse (window grid)
    Signal phi;  // receive pulse (window grid)
    double orthogonality_error = 0.0;  // adjoint-lattice Gram deviation, |k|,|l| <= 3
    double frame_bound_ratio = 0.0;    // B/A of the generating (g, a, b) system
    Localization psi_localization;
    Grid burst;
    Eigen::MatrixXcd atoms_tx;  // burst-length x (n_symbols * n_subcarriers)
    Eigen::MatrixXcd atoms_rx;
};

// mode ofdm_tight orthogonalizes g; bfdm_dual pairs g with its canonical
// dual. Requires ab = p/q < 1. guard_seconds pads the burst beyond the pulse
// tails (for channel delay spread).
OfdmConfig build_ofdm(const Signal& g, const Lattice& lat, int K, OfdmMode mode,
                      int n_subcarriers, int n_symbols, double guard_seconds = 2.0);

struct ChannelTap {
    std::int64_t delay_samples = 0;
    double doppler_cycles_per_grid = 0.0;  // cycles across the signal's span
    cplx gain{1.0, 0.0};
};

// Delay–Doppler tap model plus AWGN. Delays are sample counts and Doppler is
// given in cycles across the processed signal's grid span, so a channel spec
// is meaningful independent of the burst geometry; conversion to seconds/Hz
// happens when the channel is applied.
struct ChannelModel {
    std::vector<ChannelTap> taps;
    double noise_sigma = 0.0;  // std of the complex noise per sample
    std::uint64_t rng_seed = 0;
    bool normalize_gains = true;
};

ChannelModel make_channel(std::vector<ChannelTap> taps, double noise_sigma,
                          std::uint64_t rng_seed, bool normalize_gains = true);

// r(t) = sum_i h_i s(t - tau_i) e^{2 pi i nu_i t} + noise.
Signal apply_channel(const Signal& s, const ChannelModel& ch);

enum class Constellation { qpsk, arbitrary };

struct SymbolFrame {
    int n_symbols = 0;
    int n_subcarriers = 0;
    Constellation constellation = Constellation::arbitrary;
    std::vector<cplx> data;  // row-major: symbol k outer, subcarrier l inner

    cplx& at(int k, int l) { return data[static_cast<std::size_t>(k) *
                                          static_cast<std::size_t>(n_subcarriers) + l]; }
    cplx at(int k, int l) const { return data[static_cast<std::size_t>(k) *
                                              static_cast<std::size_t>(n_subcarriers) + l]; }
};

// Gray-mapped QPSK: bit pairs 00 -> (1+i)/sqrt2, 01 -> (-1+i)/sqrt2,
// 11 -> (-1-i)/sqrt2, 10 -> (1-i)/sqrt2.
cplx qpsk_symbol(bool bit_a, bool bit_b);
void qpsk_bits(cplx received, bool& bit_a, bool& bit_b);
SymbolFrame random_qpsk_frame(int n_symbols, int n_subcarriers, SplitMix64& rng);

// s(t) = sum_k sum_l c_{kl} psi(t - kT) e^{2 pi i t l F} on the burst grid.
Signal modulate(const OfdmConfig& cfg, const SymbolFrame& frame);

// c~_{kl} = <r, phi(. - kT) e^{2 pi i . l F}>.
SymbolFrame demodulate(const OfdmConfig& cfg, const Signal& r);

struct InterferenceResult {
    double sir_db = 0.0;
    Table leakage;  // columns k, l, re, im, abs2 over |k| <= 2, |l| <= 4
};

// Leakage L_{kl} = <H psi_00, phi_kl>; SIR = |L_00|^2 / sum_{(k,l)!=0} |L_kl|^2.
// Channel noise is ignored (deterministic analysis).
InterferenceResult interference_analysis(const OfdmConfig& cfg, const ChannelModel& ch);

struct RunMetrics {
    double orthogonality_error = 0.0;
    double mse = 0.0;
    double sir_db = 0.0;
    double ber = 0.0;
    double ber_ci95 = 0.0;
    double heisenberg_product = 0.0;
    double frame_bound_ratio = 0.0;
    std::int64_t n_bits = 0;
    std::int64_t bit_errors = 0;
};

// Monte Carlo QPSK runs with one-tap per-subcarrier zero-forcing
// equalization. Frame f draws data from stream 2f and noise from stream
// 2f+1 of the given seed; metrics are bit-identical for identical seeds.
RunMetrics ber_simulation(const OfdmConfig& cfg, const ChannelModel& ch, int n_frames,
                          std::uint64_t seed);

// Columns: tf, p, q, b_over_a, heisenberg_tight, window_distance,
// orthogonality_error, sir_identity_db; sorted by tf ascending.
// window_distance = || g/||g|| - g~/||g~|| ||_2.
Table tf_tradeoff_sweep(const Signal& g,
                        const std::vector<std::pair<int, int>>& pq_list, int K);

}  // namespace gabor

#endif
