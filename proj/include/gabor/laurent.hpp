#ifndef GABOR_LAURENT_HPP
#define GABOR_LAURENT_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gabor/lattice.hpp"
#include "gabor/signal.hpp"
#include "gabor/table.hpp"
#include "gabor/weights.hpp"

namespace gabor {

// t-parameterized band-truncated correlation symbol
//   G_{kl}(t) = (1/b) sum_r g(t - r a - k/b) conj(g(t - r a - l/b)),
// Hermitian for each t, periodic in t with period a, sampled at every grid
// point of [0, a). Indices |k|,|l| <= K; dropped_mass certifies the band
// truncation (max_t sum_{|k|>K} |G_{0k}(t)|).
struct LaurentSymbol {
    Lattice lat;
    int band_radius;
    std::int64_t t_count;
    std::vector<Eigen::MatrixXcd> blocks;  // one (2K+1)x(2K+1) block per t
    double dropped_mass;

    const Eigen::MatrixXcd& block_at_sample(std::int64_t absolute_sample) const;
};

// The band truncation is certified: construction fails when the dropped
// column mass reaches certificate_tol. Frame-bound claims use the strict
// default; internal rescale measurements may relax it.
LaurentSymbol build_symbol(const Signal& g, const Lattice& lat, int K,
                           double certificate_tol = 1e-10);

struct FrameBoundsResult {
    double A = 0.0;
    double B = 0.0;
    double t_argmin = 0.0;
    double t_argmax = 0.0;
    int band_radius = 0;
    std::int64_t t_count = 0;
    bool is_frame = false;
};

// A = min over the t grid of the smallest block eigenvalue, B = max of the
// largest. t_count = 0 uses every grid point in [0, a); otherwise it must
// divide a_samples and selects an evenly strided subset.
FrameBoundsResult frame_bounds(const Signal& g, const Lattice& lat, int K,
                               std::int64_t t_count = 0);
FrameBoundsResult frame_bounds(const LaurentSymbol& symbol, std::int64_t t_count = 0);

// gamma(t) = sum_k [G^{-1}(t mod a)]_{0k} g(t - k/b) evaluated at every grid
// point. Requires a positive lower frame bound.
Signal canonical_dual_laurent(const Signal& g, const Lattice& lat, int K);

struct TightWindowResult {
    Signal window;           // rescaled so the measured frame bound A = 1,
                             // then optionally unit L2 norm
    int floor_hits = 0;      // eigenvalues clamped at A/1e6 during G^{-1/2}
    double measured_A = 0.0; // bound of the raw construction before rescale
};

// g~ = row 0 of G^{-1/2}(t) applied to the translates of g; makes the frame
// 1-tight. unit_norm additionally normalizes ||g~|| = 1 for OFDM use.
TightWindowResult tight_window(const Signal& g, const Lattice& lat, int K,
                               bool unit_norm = false);

// Riesz bounds of the adjoint-lattice system {g_{k/b,l/a}}: by the duality
// between the (a,b) frame and its adjoint Riesz sequence these are
// (ab*A, ab*B) of the frame bounds, which is what the Gram sections nest
// into.
struct RieszBounds {
    double lower = 0.0;
    double upper = 0.0;
    double ratio() const { return upper / lower; }
};
RieszBounds adjoint_riesz_bounds(const Signal& g, const Lattice& lat, int K);

// True when the weighted l1 partial sums have converged on the grid: the
// outer 20% of the time range contributes < 1e-6 of the total.
bool weighted_tail_converged(const Signal& f, const Weight& w);

// Largest lambda1 < lambda for which the exponentially weighted norm of f
// still has converged tails; bisection to 1e-4.
double largest_converged_exponent(const Signal& f, double lambda);

// Columns: weight_family, weight_param, norm_g_time, norm_dual_time,
// norm_tight_time, norm_g_freq, norm_dual_freq, norm_tight_freq,
// converged_flags (6 chars, column order), grs_flag, lambda1 (exponential
// families only, blank otherwise).
Table decay_preservation_study(const Signal& g, const Lattice& lat, int K,
                               const std::vector<Weight>& weights);

}  // namespace gabor

#endif
