#include "gabor/gram.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "gabor/parallel.hpp"

namespace gabor {

LatticeSteps lattice_steps(const Lattice& lat, LatticeKind kind) {
    LatticeSteps s;
    if (kind == LatticeKind::adjoint) {
        s.time_samples = lat.inv_b_samples();
        s.freq_step = lat.inv_a();
        // (nu' - nu) tau' = (l'-l) k' / (ab) = (l'-l) k' q/p
        s.phase_num = lat.q();
        s.phase_den = lat.p();
    } else {
        s.time_samples = lat.a_samples();
        s.freq_step = lat.b();
        // (nu' - nu) tau' = (m'-m) n' ab = (m'-m) n' p/q
        s.phase_num = lat.p();
        s.phase_den = lat.q();
    }
    return s;
}

Signal lattice_atom(const Signal& g, const LatticeSteps& steps, std::int64_t k,
                    std::int64_t l) {
    return translate_modulate(g, k * steps.time_samples,
                              static_cast<double>(l) * steps.freq_step);
}

namespace {

// exp(2 pi i numerator/den) with the numerator reduced mod den, so rational
// phases are exact (and exactly 1 for integer ratios).
cplx rational_phase(std::int64_t numerator, std::int64_t den) {
    std::int64_t r = numerator % den;
    if (r < 0) r += den;
    if (r == 0) return cplx(1.0, 0.0);
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) /
                               static_cast<double>(den));
}

}  // namespace

GramOperator GramOperator::build(const Signal& g, const Lattice& lat, LatticeKind kind,
                                 int n) {
    if (n < 0) fail(ErrorCode::invalid_params, "section radius must be >= 0");
    lat.require_compatible(g.grid());

    // The correlation route is only faithful when the window itself is well
    // inside its grid.
    const double margin = g.grid().span() / 16.0;
    if (truncation_mass(g, margin) > 1e-10)
        fail(ErrorCode::grid_too_narrow,
             "window carries mass within span/16 of the grid edge; pad the grid");

    const LatticeSteps steps = lattice_steps(lat, kind);
    const std::int64_t w = 2 * static_cast<std::int64_t>(n) + 1;
    const std::int64_t dim = w * w;
    const std::int64_t vw = 4 * static_cast<std::int64_t>(n) + 1;

    // V(dk, dl) = (V_g g)(dk * step, dl * freq)
    Eigen::MatrixXcd vtable(vw, vw);
    parallel_for(0, vw, [&](std::int64_t row) {
        const std::int64_t dk = row - 2 * n;
        for (std::int64_t col = 0; col < vw; ++col) {
            const std::int64_t dl = col - 2 * n;
            vtable(row, col) =
                stft_point(g, g, dk * steps.time_samples,
                           static_cast<double>(dl) * steps.freq_step);
        }
    });

    Eigen::MatrixXcd m(dim, dim);
    parallel_for(0, dim, [&](std::int64_t row) {
        const std::int64_t k = row / w - n;
        const std::int64_t l = row % w - n;
        for (std::int64_t col = row; col < dim; ++col) {
            const std::int64_t kp = col / w - n;
            const std::int64_t lp = col % w - n;
            const cplx v = vtable(k - kp + 2 * n, l - lp + 2 * n);
            const cplx phase = rational_phase((lp - l) * kp * steps.phase_num,
                                              steps.phase_den);
            m(row, col) = phase * v;
            if (col != row) m(col, row) = std::conj(m(row, col));
        }
    });

    return GramOperator(n, kind, steps, lat.ab(), std::move(m));
}

Eigen::MatrixXcd GramOperator::section(int m) const {
    if (m < 0 || m > n_)
        fail(ErrorCode::invalid_params, "section radius out of range");
    const std::int64_t wm = 2 * static_cast<std::int64_t>(m) + 1;
    Eigen::MatrixXcd out(wm * wm, wm * wm);
    for (std::int64_t k = -m; k <= m; ++k)
        for (std::int64_t l = -m; l <= m; ++l) {
            const std::int64_t r_out = flat_index(k, l, m);
            const std::int64_t r_in = flat_index(k, l, n_);
            for (std::int64_t kp = -m; kp <= m; ++kp)
                for (std::int64_t lp = -m; lp <= m; ++lp)
                    out(r_out, flat_index(kp, lp, m)) =
                        matrix_(r_in, flat_index(kp, lp, n_));
        }
    return out;
}

SectionEigen hermitian_eigen(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success)
        fail(ErrorCode::internal, "Hermitian eigendecomposition failed");
    SectionEigen out;
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    return out;
}

Eigen::VectorXcd spd_solve(const SectionEigen& eig, const Eigen::VectorXcd& rhs) {
    const double floor = 1e-12 * eig.max_eigenvalue();
    if (!(eig.min_eigenvalue() > floor))
        fail(ErrorCode::not_a_frame,
             "Gram section is not positive definite (frame-deficient system)");
    const Eigen::VectorXcd projected = eig.eigenvectors.adjoint() * rhs;
    Eigen::VectorXcd scaled = projected;
    for (Eigen::Index i = 0; i < scaled.size(); ++i) scaled(i) /= eig.eigenvalues(i);
    return eig.eigenvectors * scaled;
}

}  // namespace gabor
