#ifndef GABOR_DUAL_HPP
#define GABOR_DUAL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gabor/gram.hpp"
#include "gabor/lattice.hpp"
#include "gabor/signal.hpp"
#include "gabor/table.hpp"

namespace gabor {

// gamma^(n) = H_n* [H_n H_n*]^{-1} sigma^(n), the Wexler-Raz finite-section
// approximation of the canonical dual window. sigma carries ab at (0,0).
Signal finite_section_dual(const Signal& g, const Lattice& lat, int n);
Signal finite_section_dual(const GramOperator& gram, const Signal& g, const Lattice& lat,
                           int n);

// max over |k|,|l| <= m of |<gamma, g_{k/b,l/a}> - ab delta_{k0} delta_{l0}|.
double wexler_raz_residual(const Signal& gamma, const Signal& g, const Lattice& lat,
                           int m);

// Columns: n, error_l2, cond, wr_residual. error_l2 compares against the
// reference dual at n_ref (which must exceed max(n_list)).
Table convergence_study(const Signal& g, const Lattice& lat,
                        const std::vector<int>& n_list, int n_ref, int wr_m);

// d_{n,m} = <f, g_{na,mb}>, |n|,|m| <= radius, row-major n outer.
Eigen::VectorXcd frame_coefficients(const Signal& f, const Signal& g, const Lattice& lat,
                                    int radius);

struct TsvdConfig {
    double delta = 1e-8;                      // assumed data precision
    int smoothness_p = 1;                     // regularization smoothness (1 or 2)
    std::optional<double> threshold_override; // set to force tau (0 disables cuts)
    // When set, the coefficient data d are perturbed entrywise by complex
    // noise of std delta * max|d| before the solve (data known to precision
    // delta).
    std::optional<std::uint64_t> data_noise_seed;
};

// tau_n = B_n (delta/p)^{1/(p+1)} with B_n the largest eigenvalue of the
// frame-lattice section.
double tsvd_threshold(double b_n, double delta, int smoothness_p);

struct TsvdResult {
    Eigen::VectorXcd coeffs;
    Signal reconstruction;
    double coeff_norm = 0.0;
    std::int64_t rank_kept = 0;
    double tau = 0.0;
    double rel_error = 0.0;  // ||f - reconstruction|| / ||f||
};

// Regularized solve of T_n T_n* c = d via eigenvalue truncation below tau_n.
TsvdResult tsvd_solve(const Signal& g, const Lattice& lat, const Signal& f, int n,
                      const TsvdConfig& cfg);

struct ReconstructResult {
    Signal reconstruction;
    double rel_error = 0.0;
};

// f_rec = sum_{|n|,|m| <= radius} <f, gamma_{n,m}> g_{na,mb}; pass
// swap_roles to analyse with g and synthesize with gamma instead.
ReconstructResult reconstruct(const Signal& f, const Signal& g, const Signal& gamma,
                              const Lattice& lat, int radius, bool swap_roles = false);

}  // namespace gabor

#endif
