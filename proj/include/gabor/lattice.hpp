#ifndef GABOR_LATTICE_HPP
#define GABOR_LATTICE_HPP

#include <cstdint>

#include "gabor/grid.hpp"

namespace gabor {

enum class FrameRegime { oversampled, critical, undersampled };  // ab <1, =1, >1

// Time-frequency lattice (a, b) with rational density ab = p/q. The values
// are derived from integers (p, q, a_samples, dt) so that both the frame
// shifts n*a and the adjoint shifts k/b are exact sample counts:
//   a   = a_samples * dt
//   b   = (p/q) / a          =>  1/b = a_samples * q / p samples.
// Construction requires gcd(p, q) = 1 and p | a_samples.
class Lattice {
  public:
    Lattice(int p, int q, std::int64_t a_samples, std::int64_t dt_num, std::int64_t dt_den);

    int p() const { return p_; }
    int q() const { return q_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double ab() const { return static_cast<double>(p_) / static_cast<double>(q_); }
    FrameRegime regime() const { return regime_; }

    std::int64_t a_samples() const { return a_samples_; }
    std::int64_t inv_b_samples() const { return inv_b_samples_; }  // 1/b in samples
    double inv_a() const { return 1.0 / a_; }                      // adjoint modulation step (Hz)
    double inv_b() const { return inv_b_; }                        // adjoint time step (s)

    // Spectral-efficiency factor of the derived OFDM grid: TF = 1/(ab) = q/p.
    double tf() const { return static_cast<double>(q_) / static_cast<double>(p_); }

    // True when the lattice steps are commensurate with the signal grid.
    bool compatible_with(const Grid& grid) const {
        return grid.dt_num == dt_num_ && grid.dt_den == dt_den_;
    }
    void require_compatible(const Grid& grid) const;

  private:
    int p_;
    int q_;
    std::int64_t a_samples_;
    std::int64_t inv_b_samples_;
    std::int64_t dt_num_;
    std::int64_t dt_den_;
    double a_;
    double b_;
    double inv_b_;
    FrameRegime regime_;
};

}  // namespace gabor

#endif
