#ifndef GABOR_GRAM_HPP
#define GABOR_GRAM_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "gabor/lattice.hpp"
#include "gabor/signal.hpp"

namespace gabor {

enum class LatticeKind {
    adjoint,  // shifts k/b, modulations l/a
    frame     // shifts n*a, modulations m*b
};

// Step sizes of the atom family <g_{k*step, l*freq}> for one lattice kind,
// plus the exact rational phase unit entering the Gram entries.
struct LatticeSteps {
    std::int64_t time_samples = 0;  // time shift per index, in samples
    double freq_step = 0.0;         // modulation per index, Hz
    std::int64_t phase_num = 0;     // phase = exp(2 pi i dl k' phase_num / phase_den)
    std::int64_t phase_den = 1;
};

LatticeSteps lattice_steps(const Lattice& lat, LatticeKind kind);

// Atom g_{k,l}(t) = e^{2 pi i l freq t} g(t - k step).
Signal lattice_atom(const Signal& g, const LatticeSteps& steps, std::int64_t k, std::int64_t l);

// Finite section of the bi-infinite Gram matrix of the lattice atoms:
// entry[(k,l),(k',l')] = <g_{k',l'}, g_{k,l}>, indices |k|,|l| <= n flattened
// row-major with k outer, l inner, each running -n..n.
//
// Entries are evaluated through the time-frequency correlation identity
//   <g_{k',l'}, g_{k,l}> = e^{2 pi i (l'-l) k' / (ab-kind)} (V_g g)(dk*step, dl*freq)
// rather than as inner products of materialized atoms: the correlation
// integrand stays centred inside the grid for all section indices the grid
// can support, so the section equals the L2(R) values to machine precision
// even when a shifted atom itself would fall off the grid edge.
class GramOperator {
  public:
    static GramOperator build(const Signal& g, const Lattice& lat, LatticeKind kind, int n);

    int radius() const { return n_; }
    LatticeKind kind() const { return kind_; }
    std::int64_t dim() const { return (2 * static_cast<std::int64_t>(n_) + 1) *
                                      (2 * static_cast<std::int64_t>(n_) + 1); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    const LatticeSteps& steps() const { return steps_; }
    double ab() const { return ab_; }

    // Principal section of radius m <= n, same flattening convention.
    Eigen::MatrixXcd section(int m) const;

    static std::int64_t flat_index(std::int64_t k, std::int64_t l, int n) {
        const std::int64_t w = 2 * static_cast<std::int64_t>(n) + 1;
        return (k + n) * w + (l + n);
    }

  private:
    GramOperator(int n, LatticeKind kind, LatticeSteps steps, double ab,
                 Eigen::MatrixXcd matrix)
        : n_(n), kind_(kind), steps_(steps), ab_(ab), matrix_(std::move(matrix)) {}

    int n_;
    LatticeKind kind_;
    LatticeSteps steps_;
    double ab_;
    Eigen::MatrixXcd matrix_;
};

// Eigendecomposition of a Hermitian PSD section with the spectrum extremes.
struct SectionEigen {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXcd eigenvectors;
    double min_eigenvalue() const { return eigenvalues(0); }
    double max_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }
    double condition() const { return max_eigenvalue() / min_eigenvalue(); }
};

SectionEigen hermitian_eigen(const Eigen::MatrixXcd& m);

// Positive-definite solve through the eigendecomposition with a relative
// pivot floor of 1e-12; failure reports frame deficiency.
Eigen::VectorXcd spd_solve(const SectionEigen& eig, const Eigen::VectorXcd& rhs);

}  // namespace gabor

#endif
