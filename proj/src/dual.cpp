#include "gabor/dual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gabor/rng.hpp"

namespace gabor {

namespace {

void require_frame_density(const Lattice& lat) {
    if (lat.regime() == FrameRegime::undersampled)
        fail(ErrorCode::not_a_frame,
             "ab = " + std::to_string(lat.ab()) + " > 1: no frame exists");
}

Eigen::VectorXcd sigma_vector(const Lattice& lat, int n) {
    const std::int64_t dim = (2 * static_cast<std::int64_t>(n) + 1) *
                             (2 * static_cast<std::int64_t>(n) + 1);
    Eigen::VectorXcd sigma = Eigen::VectorXcd::Zero(dim);
    sigma(GramOperator::flat_index(0, 0, n)) = lat.ab();
    return sigma;
}

Signal assemble_atom_sum(const Signal& g, const LatticeSteps& steps,
                         const Eigen::VectorXcd& coeffs, int n) {
    std::vector<cplx> acc(static_cast<std::size_t>(g.length()), cplx(0.0, 0.0));
    const std::int64_t w = 2 * static_cast<std::int64_t>(n) + 1;
    for (std::int64_t k = -n; k <= n; ++k)
        for (std::int64_t l = -n; l <= n; ++l) {
            const cplx c = coeffs((k + n) * w + (l + n));
            if (c == cplx(0.0, 0.0)) continue;
            const Signal atom = lattice_atom(g, steps, k, l);
            for (std::int64_t i = 0; i < g.length(); ++i)
                acc[static_cast<std::size_t>(i)] += c * atom[i];
        }
    return Signal(g.grid(), std::move(acc));
}

}  // namespace

Signal finite_section_dual(const GramOperator& gram, const Signal& g, const Lattice& lat,
                           int n) {
    if (n > gram.radius())
        fail(ErrorCode::invalid_params, "requested radius exceeds the built Gram");
    const Eigen::MatrixXcd section =
        (n == gram.radius()) ? gram.matrix() : gram.section(n);
    const SectionEigen eig = hermitian_eigen(section);
    const Eigen::VectorXcd x = spd_solve(eig, sigma_vector(lat, n));
    return assemble_atom_sum(g, gram.steps(), x, n);
}

Signal finite_section_dual(const Signal& g, const Lattice& lat, int n) {
    require_frame_density(lat);
    const GramOperator gram = GramOperator::build(g, lat, LatticeKind::adjoint, n);
    return finite_section_dual(gram, g, lat, n);
}

double wexler_raz_residual(const Signal& gamma, const Signal& g, const Lattice& lat,
                           int m) {
    if (gamma.grid() != g.grid())
        fail(ErrorCode::grid_mismatch, "dual and window must share a grid");
    const LatticeSteps steps = lattice_steps(lat, LatticeKind::adjoint);
    double worst = 0.0;
    for (std::int64_t k = -m; k <= m; ++k)
        for (std::int64_t l = -m; l <= m; ++l) {
            cplx v = inner_product(gamma, lattice_atom(g, steps, k, l));
            if (k == 0 && l == 0) v -= lat.ab();
            worst = std::max(worst, std::abs(v));
        }
    return worst;
}

Table convergence_study(const Signal& g, const Lattice& lat,
                        const std::vector<int>& n_list, int n_ref, int wr_m) {
    require_frame_density(lat);
    if (n_list.empty()) fail(ErrorCode::invalid_params, "empty n list");
    if (!std::is_sorted(n_list.begin(), n_list.end()))
        fail(ErrorCode::invalid_params, "n list must be increasing");
    const int n_max = n_list.back();
    if (n_ref <= n_max)
        fail(ErrorCode::invalid_params, "n_ref must exceed max(n_list)");

    const GramOperator gram = GramOperator::build(g, lat, LatticeKind::adjoint, n_ref);
    const Signal gamma_ref = finite_section_dual(gram, g, lat, n_ref);

    Table table({"n", "error_l2", "cond", "wr_residual"});
    for (int n : n_list) {
        const Eigen::MatrixXcd section = gram.section(n);
        const SectionEigen eig = hermitian_eigen(section);
        const Eigen::VectorXcd x = spd_solve(eig, sigma_vector(lat, n));
        const Signal gamma_n = assemble_atom_sum(g, gram.steps(), x, n);
        table.add_row({Table::Cell::number_cell(n),
                       Table::Cell::number_cell(l2_distance(gamma_n, gamma_ref)),
                       Table::Cell::number_cell(eig.condition()),
                       Table::Cell::number_cell(
                           wexler_raz_residual(gamma_n, g, lat, wr_m))});
    }
    return table;
}

Eigen::VectorXcd frame_coefficients(const Signal& f, const Signal& g, const Lattice& lat,
                                    int radius) {
    if (f.grid() != g.grid())
        fail(ErrorCode::grid_mismatch, "signal and window must share a grid");
    lat.require_compatible(g.grid());
    const LatticeSteps steps = lattice_steps(lat, LatticeKind::frame);
    const std::int64_t w = 2 * static_cast<std::int64_t>(radius) + 1;
    Eigen::VectorXcd d(w * w);
    for (std::int64_t n = -radius; n <= radius; ++n)
        for (std::int64_t m = -radius; m <= radius; ++m)
            d((n + radius) * w + (m + radius)) =
                inner_product(f, lattice_atom(g, steps, n, m));
    return d;
}

double tsvd_threshold(double b_n, double delta, int smoothness_p) {
    if (!(delta > 0.0) || delta >= 1.0)
        fail(ErrorCode::invalid_params, "data precision delta must lie in (0,1)");
    if (smoothness_p != 1 && smoothness_p != 2)
        fail(ErrorCode::invalid_params, "smoothness parameter must be 1 or 2");
    return b_n * std::pow(delta / static_cast<double>(smoothness_p),
                          1.0 / (static_cast<double>(smoothness_p) + 1.0));
}

TsvdResult tsvd_solve(const Signal& g, const Lattice& lat, const Signal& f, int n,
                      const TsvdConfig& cfg) {
    const GramOperator gram = GramOperator::build(g, lat, LatticeKind::frame, n);
    const SectionEigen eig = hermitian_eigen(gram.matrix());
    Eigen::VectorXcd d = frame_coefficients(f, g, lat, n);
    if (cfg.data_noise_seed && cfg.delta > 0.0) {
        SplitMix64 rng(derive_stream(*cfg.data_noise_seed, 0));
        const double sigma =
            cfg.delta * d.cwiseAbs().maxCoeff() / std::numbers::sqrt2;
        for (Eigen::Index i = 0; i < d.size(); ++i)
            d(i) += cplx(sigma * rng.normal(), sigma * rng.normal());
    }

    const double b_n = eig.max_eigenvalue();
    const double tau = cfg.threshold_override
                           ? *cfg.threshold_override
                           : tsvd_threshold(b_n, cfg.delta, cfg.smoothness_p);

    const Eigen::VectorXcd projected = eig.eigenvectors.adjoint() * d;
    Eigen::VectorXcd scaled = Eigen::VectorXcd::Zero(projected.size());
    std::int64_t kept = 0;
    for (Eigen::Index i = 0; i < projected.size(); ++i) {
        const double lambda = eig.eigenvalues(i);
        if (lambda < tau || lambda <= 0.0) continue;
        scaled(i) = projected(i) / lambda;
        ++kept;
    }
    TsvdResult result{Eigen::VectorXcd(), Signal(f.grid(), std::vector<cplx>(
                                               static_cast<std::size_t>(f.length()))),
                      0.0, 0, tau, 0.0};
    result.coeffs = eig.eigenvectors * scaled;
    result.reconstruction =
        assemble_atom_sum(g, lattice_steps(lat, LatticeKind::frame), result.coeffs, n);
    result.coeff_norm = result.coeffs.norm();
    result.rank_kept = kept;
    const double fn = f.norm();
    result.rel_error = (fn > 0.0) ? l2_distance(f, result.reconstruction) / fn : 0.0;
    return result;
}

ReconstructResult reconstruct(const Signal& f, const Signal& g, const Signal& gamma,
                              const Lattice& lat, int radius, bool swap_roles) {
    const Signal& analysis = swap_roles ? g : gamma;
    const Signal& synthesis = swap_roles ? gamma : g;
    const Eigen::VectorXcd coeffs = frame_coefficients(f, analysis, lat, radius);
    const Signal rec =
        assemble_atom_sum(synthesis, lattice_steps(lat, LatticeKind::frame), coeffs,
                          radius);
    const double fn = f.norm();
    return ReconstructResult{rec, (fn > 0.0) ? l2_distance(f, rec) / fn : 0.0};
}

}  // namespace gabor
