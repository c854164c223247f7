#ifndef GABOR_GRID_HPP
#define GABOR_GRID_HPP

#include <cstdint>
#include <numeric>

#include "gabor/errors.hpp"

namespace gabor {

// Uniform sampling grid with exact rational spacing dt = dt_num/dt_den and
// origin t0 = t0_samples * dt. Keeping the spacing rational lets lattice
// shifts be expressed as exact integer sample counts, which is what makes
// the Wexler-Raz identities hold at grid level without interpolation.
struct Grid {
    std::int64_t t0_samples = 0;
    std::int64_t dt_num = 1;
    std::int64_t dt_den = 1;
    std::int64_t length = 0;

    Grid() = default;

    Grid(std::int64_t t0_samples_, std::int64_t dt_num_, std::int64_t dt_den_,
         std::int64_t length_)
        : t0_samples(t0_samples_), dt_num(dt_num_), dt_den(dt_den_), length(length_) {
        if (dt_num <= 0 || dt_den <= 0)
            fail(ErrorCode::invalid_params, "grid spacing must be positive");
        if (length < 1)
            fail(ErrorCode::invalid_params, "grid length must be >= 1");
        const std::int64_t g = std::gcd(dt_num, dt_den);
        dt_num /= g;
        dt_den /= g;
    }

    double dt() const { return static_cast<double>(dt_num) / static_cast<double>(dt_den); }
    double t0() const { return static_cast<double>(t0_samples) * dt(); }
    double time_at(std::int64_t i) const {
        return static_cast<double>(t0_samples + i) * dt();
    }
    double span() const { return static_cast<double>(length) * dt(); }

    bool operator==(const Grid& other) const {
        return t0_samples == other.t0_samples && dt_num == other.dt_num &&
               dt_den == other.dt_den && length == other.length;
    }
    bool operator!=(const Grid& other) const { return !(*this == other); }

    bool same_spacing(const Grid& other) const {
        return dt_num == other.dt_num && dt_den == other.dt_den;
    }

    // Converts a real shift (seconds) to a sample count; errors out if the
    // shift is not commensurate with the grid. No silent rounding.
    std::int64_t samples_for_shift(double tau) const;
};

}  // namespace gabor

#endif
