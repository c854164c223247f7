#include "gabor/signal.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "gabor/errors.hpp"

namespace gabor {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_same_grid(const Signal& f, const Signal& g) {
    if (f.grid() != g.grid())
        fail(ErrorCode::grid_mismatch, "signals live on different grids");
}

}  // namespace

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ok: return "OK";
        case ErrorCode::invalid_params: return "E_PARAMS";
        case ErrorCode::lattice: return "E_LATTICE";
        case ErrorCode::grid_mismatch: return "E_GRID_MISMATCH";
        case ErrorCode::commensurability: return "E_COMMENSURABILITY";
        case ErrorCode::grid_too_narrow: return "E_GRID_NARROW";
        case ErrorCode::not_a_frame: return "E_NOT_FRAME";
        case ErrorCode::singular_section: return "E_SINGULAR_SECTION";
        case ErrorCode::insufficient_data: return "E_INSUFFICIENT_DATA";
        case ErrorCode::band_truncation: return "E_BAND";
        case ErrorCode::io: return "E_IO";
        case ErrorCode::internal: return "E_INTERNAL";
    }
    return "E_INTERNAL";
}

std::int64_t Grid::samples_for_shift(double tau) const {
    const double steps = tau / dt();
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps)))
        fail(ErrorCode::commensurability,
             "shift " + std::to_string(tau) + " is not an integer number of samples");
    return static_cast<std::int64_t>(rounded);
}

Signal::Signal(Grid grid, std::vector<cplx> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (static_cast<std::int64_t>(samples_.size()) != grid_.length)
        fail(ErrorCode::invalid_params, "sample count does not match grid length");
    for (const cplx& v : samples_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(ErrorCode::invalid_params, "signal contains non-finite samples");
    }
}

double Signal::norm_squared() const {
    double acc = 0.0;
    for (const cplx& v : samples_) acc += std::norm(v);
    return acc * dt();
}

double Signal::norm() const { return std::sqrt(norm_squared()); }

Signal make_gaussian(const Grid& grid) {
    std::vector<cplx> s(static_cast<std::size_t>(grid.length));
    const double amp = std::pow(2.0, 0.25);
    for (std::int64_t i = 0; i < grid.length; ++i) {
        const double t = grid.time_at(i);
        s[static_cast<std::size_t>(i)] = amp * std::exp(-std::numbers::pi * t * t);
    }
    return Signal(grid, std::move(s));
}

Signal make_rectangular(const Grid& grid, std::int64_t width_samples) {
    if (width_samples < 1)
        fail(ErrorCode::invalid_params, "rectangular width must be positive");
    const double w = static_cast<double>(width_samples) * grid.dt();
    const double height = 1.0 / std::sqrt(w);
    std::vector<cplx> s(static_cast<std::size_t>(grid.length), cplx(0.0, 0.0));
    for (std::int64_t i = 0; i < grid.length; ++i) {
        const std::int64_t idx = grid.t0_samples + i;
        if (idx >= 0 && idx < width_samples) s[static_cast<std::size_t>(i)] = height;
    }
    return Signal(grid, std::move(s));
}

Signal make_raised_cosine(const Grid& grid, std::int64_t half_width_samples) {
    if (half_width_samples < 1)
        fail(ErrorCode::invalid_params, "raised-cosine width must be positive");
    const double w = static_cast<double>(half_width_samples) * grid.dt();
    std::vector<cplx> s(static_cast<std::size_t>(grid.length), cplx(0.0, 0.0));
    for (std::int64_t i = 0; i < grid.length; ++i) {
        const double t = grid.time_at(i);
        if (std::abs(t) <= w)
            s[static_cast<std::size_t>(i)] = 0.5 * (1.0 + std::cos(std::numbers::pi * t / w));
    }
    Signal raw(grid, std::move(s));
    const double n = raw.norm();
    if (n == 0.0) fail(ErrorCode::invalid_params, "raised cosine has no support on the grid");
    return scale(raw, 1.0 / n);
}

Signal make_from_samples(const Grid& grid, std::vector<cplx> samples) {
    return Signal(grid, std::move(samples));
}

Signal translate_modulate(const Signal& f, std::int64_t shift_samples, double nu) {
    const Grid& g = f.grid();
    std::vector<cplx> out(static_cast<std::size_t>(g.length), cplx(0.0, 0.0));
    for (std::int64_t i = 0; i < g.length; ++i) {
        const std::int64_t src = i - shift_samples;
        if (src < 0 || src >= g.length) continue;
        const double phase = two_pi * nu * g.time_at(i);
        out[static_cast<std::size_t>(i)] = f[src] * std::polar(1.0, phase);
    }
    return Signal(g, std::move(out));
}

Signal translate_modulate_real(const Signal& f, double tau, double nu) {
    return translate_modulate(f, f.grid().samples_for_shift(tau), nu);
}

cplx inner_product(const Signal& f, const Signal& g) {
    require_same_grid(f, g);
    cplx acc(0.0, 0.0);
    const auto& a = f.samples();
    const auto& b = g.samples();
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
    return acc * f.dt();
}

cplx stft_point(const Signal& f, const Signal& g, std::int64_t tau_samples, double omega) {
    require_same_grid(f, g);
    // <f, e^{2 pi i omega .} g(. - tau)> without materializing the atom.
    const Grid& grid = f.grid();
    cplx acc(0.0, 0.0);
    for (std::int64_t i = 0; i < grid.length; ++i) {
        const std::int64_t src = i - tau_samples;
        if (src < 0 || src >= grid.length) continue;
        const double phase = -two_pi * omega * grid.time_at(i);
        acc += f[i] * std::conj(g[src]) * std::polar(1.0, phase);
    }
    return acc * grid.dt();
}

double weighted_l1_norm(const Signal& f, const Weight& w) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < f.length(); ++i)
        acc += std::abs(f[i]) * w(f.time_at(i));
    return acc * f.dt();
}

double truncation_mass(const Signal& f, double margin) {
    const Grid& g = f.grid();
    if (!(margin > 0.0) || margin >= 0.5 * g.span())
        fail(ErrorCode::invalid_params, "margin must lie in (0, span/2)");
    const double lo = g.t0() + margin;
    const double hi = g.t0() + g.span() - margin;
    double edge = 0.0, total = 0.0;
    for (std::int64_t i = 0; i < g.length; ++i) {
        const double m = std::norm(f[i]);
        total += m;
        const double t = g.time_at(i);
        if (t < lo || t >= hi) edge += m;
    }
    if (total == 0.0) return 0.0;
    return edge / total;
}

Signal fourier_transform(const Signal& f) {
    static std::mutex planner_mutex;
    const std::int64_t L = f.length();
    std::vector<cplx> in(f.samples());
    std::vector<cplx> dft(static_cast<std::size_t>(L));
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_plan plan = fftw_plan_dft_1d(
            static_cast<int>(L), reinterpret_cast<fftw_complex*>(in.data()),
            reinterpret_cast<fftw_complex*>(dft.data()), FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    // fhat(w_m) = dt e^{-2 pi i t0 w_m} DFT_{(m - L/2) mod L}, with the
    // frequency grid w_m = (m - L/2) / (L dt) centred around zero.
    const std::int64_t half = L / 2;
    const Grid& g = f.grid();
    // Frequency spacing 1/(L dt) = dt_den / (L dt_num) as an exact rational.
    Grid freq_grid(-half, g.dt_den, g.length * g.dt_num, L);
    std::vector<cplx> out(static_cast<std::size_t>(L));
    const double dt = f.dt();
    const double t0 = f.t0();
    for (std::int64_t m = 0; m < L; ++m) {
        const double omega = freq_grid.time_at(m);
        std::int64_t k = (m - half) % L;
        if (k < 0) k += L;
        out[static_cast<std::size_t>(m)] =
            dt * std::polar(1.0, -two_pi * t0 * omega) * dft[static_cast<std::size_t>(k)];
    }
    return Signal(freq_grid, std::move(out));
}

Signal scale(const Signal& f, cplx factor) {
    std::vector<cplx> out(f.samples());
    for (cplx& v : out) v *= factor;
    return Signal(f.grid(), std::move(out));
}

Signal add(const Signal& a, const Signal& b) {
    require_same_grid(a, b);
    std::vector<cplx> out(a.samples());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.samples()[i];
    return Signal(a.grid(), std::move(out));
}

Signal subtract(const Signal& a, const Signal& b) {
    require_same_grid(a, b);
    std::vector<cplx> out(a.samples());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.samples()[i];
    return Signal(a.grid(), std::move(out));
}

Signal normalized(const Signal& f) {
    const double n = f.norm();
    if (n == 0.0) fail(ErrorCode::invalid_params, "cannot normalize the zero signal");
    return scale(f, 1.0 / n);
}

double l2_distance(const Signal& a, const Signal& b) {
    require_same_grid(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.samples().size(); ++i)
        acc += std::norm(a.samples()[i] - b.samples()[i]);
    return std::sqrt(acc * a.dt());
}

DecayFit decay_envelope_fit(const Signal& f, DecayModel model) {
    const std::int64_t L = f.length();
    double peak = 0.0;
    for (std::int64_t i = 0; i < L; ++i) peak = std::max(peak, std::abs(f[i]));
    const double floor = std::max(1e-13, 1e-12 * peak);

    // Monotone magnitude envelope: running maximum from the outside in.
    std::vector<std::int64_t> order(static_cast<std::size_t>(L));
    for (std::int64_t i = 0; i < L; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
        return std::abs(f.time_at(a)) > std::abs(f.time_at(b));
    });
    std::vector<double> envelope(static_cast<std::size_t>(L));
    double running = 0.0;
    for (std::int64_t idx : order) {
        running = std::max(running, std::abs(f[idx]));
        envelope[static_cast<std::size_t>(idx)] = running;
    }

    std::vector<double> xs, ys;
    std::int64_t left = 0, right = 0;
    for (std::int64_t i = 0; i < L; ++i) {
        const double mag = envelope[static_cast<std::size_t>(i)];
        if (mag <= floor) continue;
        const double t = f.time_at(i);
        const double x = (model == DecayModel::exponential)
                             ? std::abs(t)
                             : std::log1p(std::abs(t));
        xs.push_back(x);
        ys.push_back(std::log(mag));
        if (t < 0.0) ++left;
        if (t > 0.0) ++right;
    }
    if (left < 8 || right < 8)
        fail(ErrorCode::insufficient_data,
             "too few samples above the amplitude floor for a decay fit");

    const std::size_t n = xs.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0)
        fail(ErrorCode::insufficient_data, "degenerate abscissa in decay fit");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double r2 = 1.0;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double resid = ys[i] - (intercept + slope * xs[i]);
            ss_res += resid * resid;
        }
        r2 = 1.0 - ss_res / syy;
    }
    DecayFit fit;
    fit.model = model;
    fit.rate = -slope;
    fit.log_constant = intercept;
    fit.fit_quality = std::clamp(r2, 0.0, 1.0);
    fit.samples_used = static_cast<std::int64_t>(n);
    return fit;
}

namespace {

double second_moment_spread(const Signal& f) {
    double total = 0.0, mean = 0.0;
    for (std::int64_t i = 0; i < f.length(); ++i) {
        const double m = std::norm(f[i]);
        total += m;
        mean += m * f.time_at(i);
    }
    if (total == 0.0) return 0.0;
    mean /= total;
    double var = 0.0;
    for (std::int64_t i = 0; i < f.length(); ++i) {
        const double d = f.time_at(i) - mean;
        var += std::norm(f[i]) * d * d;
    }
    return std::sqrt(var / total);
}

}  // namespace

Localization localization(const Signal& f) {
    Localization loc;
    loc.time_spread = second_moment_spread(f);
    loc.freq_spread = second_moment_spread(fourier_transform(f));
    loc.heisenberg_product = loc.time_spread * loc.freq_spread;
    return loc;
}

}  // namespace gabor
