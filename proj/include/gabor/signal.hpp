#ifndef GABOR_SIGNAL_HPP
#define GABOR_SIGNAL_HPP

#include <complex>
#include <vector>

#include "gabor/grid.hpp"
#include "gabor/weights.hpp"

namespace gabor {

using cplx = std::complex<double>;

// Complex-valued function sampled on a uniform grid. Inner products and
// norms are Riemann sums scaled by dt, so unit-norm windows keep unit norm
// independently of the sampling resolution. Immutable after construction.
class Signal {
  public:
    Signal(Grid grid, std::vector<cplx> samples);

    const Grid& grid() const { return grid_; }
    std::int64_t length() const { return grid_.length; }
    double dt() const { return grid_.dt(); }
    double t0() const { return grid_.t0(); }
    double time_at(std::int64_t i) const { return grid_.time_at(i); }

    const std::vector<cplx>& samples() const { return samples_; }
    cplx operator[](std::int64_t i) const { return samples_[static_cast<std::size_t>(i)]; }

    double norm() const;
    double norm_squared() const;

  private:
    Grid grid_;
    std::vector<cplx> samples_;
};

enum class WindowKind { gaussian, rectangular, raised_cosine, from_samples };

// g(t) = 2^(1/4) exp(-pi t^2); unit L2 norm, invariant under the Fourier
// transform used elsewhere in the toolkit.
Signal make_gaussian(const Grid& grid);

// Height 1/sqrt(w) on [0, w) where w = width_samples * dt.
Signal make_rectangular(const Grid& grid, std::int64_t width_samples);

// (1 + cos(pi t / w))/2 on [-w, w], normalized to unit L2 norm afterwards;
// w = half_width_samples * dt.
Signal make_raised_cosine(const Grid& grid, std::int64_t half_width_samples);

Signal make_from_samples(const Grid& grid, std::vector<cplx> samples);

// output(t) = e^{2 pi i nu t} f(t - tau) on the same grid. Samples shifted
// past an edge are dropped and zeros shifted in; callers are responsible for
// padding wide enough that the dropped mass is negligible (truncation_mass).
Signal translate_modulate(const Signal& f, std::int64_t shift_samples, double nu);
Signal translate_modulate_real(const Signal& f, double tau, double nu);

// dt * sum f(t) conj(g(t)); conjugate-linear in the second argument.
cplx inner_product(const Signal& f, const Signal& g);

// (V_g f)(tau, omega) = <f, e^{2 pi i omega .} g(. - tau)>
//                     = integral f(x) conj(g(x-tau)) e^{-2 pi i x omega} dx.
cplx stft_point(const Signal& f, const Signal& g, std::int64_t tau_samples, double omega);

double weighted_l1_norm(const Signal& f, const Weight& w);

// Fraction of ||f||^2 carried by samples within `margin` seconds of either
// grid edge. Requires 0 < margin < span/2.
double truncation_mass(const Signal& f, double margin);

// Riemann-sum Fourier transform on the dual grid (unitary at grid level:
// ||fhat|| == ||f||). Frequency spacing is 1/(L dt), frequencies centred
// around zero.
Signal fourier_transform(const Signal& f);

Signal scale(const Signal& f, cplx factor);
Signal add(const Signal& a, const Signal& b);
Signal subtract(const Signal& a, const Signal& b);
Signal normalized(const Signal& f);

double l2_distance(const Signal& a, const Signal& b);

enum class DecayModel { exponential, polynomial };

struct DecayFit {
    DecayModel model = DecayModel::exponential;
    double rate = 0.0;          // lambda for exponential, s for polynomial
    double log_constant = 0.0;  // intercept of the log-envelope regression
    double fit_quality = 0.0;   // R^2 of the regression, clamped to [0, 1]
    std::int64_t samples_used = 0;
};

// Least-squares fit of the log magnitude envelope against -rate*|t|
// (exponential) or -rate*log(1+|t|) (polynomial). The envelope is the
// minimal non-increasing majorant env(t) = max_{|s| >= |t|} |f(s)| -- the
// object a decay-class bound c e^{-lambda |t|} actually constrains -- so
// oscillation zeros do not contaminate the regression. Samples below the
// amplitude floor max(1e-13, 1e-12 * max|f|) are excluded; needs at least
// 8 usable samples on each side of t = 0.
DecayFit decay_envelope_fit(const Signal& f, DecayModel model);

// Time and frequency spreads around the centroids, and their product.
// The product is bounded below by 1/(4 pi) in the continuous limit.
struct Localization {
    double time_spread = 0.0;
    double freq_spread = 0.0;
    double heisenberg_product = 0.0;
};

Localization localization(const Signal& f);

}  // namespace gabor

#endif
