#include "gabor/lattice.hpp"

#include <numeric>
#include <string>

namespace gabor {

Lattice::Lattice(int p, int q, std::int64_t a_samples, std::int64_t dt_num,
                 std::int64_t dt_den)
    : p_(p), q_(q), a_samples_(a_samples), dt_num_(dt_num), dt_den_(dt_den) {
    if (p < 1 || q < 1)
        fail(ErrorCode::lattice, "lattice parameters p, q must be positive");
    if (std::gcd(p, q) != 1)
        fail(ErrorCode::lattice, "lattice parameters p=" + std::to_string(p) +
                                     ", q=" + std::to_string(q) + " are not coprime");
    if (a_samples < 1)
        fail(ErrorCode::lattice, "a_samples must be positive");
    if (dt_num < 1 || dt_den < 1)
        fail(ErrorCode::lattice, "grid spacing must be positive");
    if (a_samples % p != 0)
        fail(ErrorCode::lattice,
             "a_samples must be a multiple of p so the adjoint shift 1/b stays on the grid");

    const double dt = static_cast<double>(dt_num) / static_cast<double>(dt_den);
    a_ = static_cast<double>(a_samples) * dt;
    // ab = p/q exactly; b and 1/b are derived from the integers.
    b_ = (static_cast<double>(p) / static_cast<double>(q)) / a_;
    inv_b_samples_ = a_samples / p * q;
    inv_b_ = static_cast<double>(inv_b_samples_) * dt;

    if (p == q)
        regime_ = FrameRegime::critical;
    else if (p < q)
        regime_ = FrameRegime::oversampled;
    else
        regime_ = FrameRegime::undersampled;
}

void Lattice::require_compatible(const Grid& grid) const {
    if (!compatible_with(grid))
        fail(ErrorCode::commensurability,
             "lattice sample counts were derived for a different grid spacing");
}

}  // namespace gabor
