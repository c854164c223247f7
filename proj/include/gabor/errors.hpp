#ifndef GABOR_ERRORS_HPP
#define GABOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gabor {

// Error categories. Mirrored one-to-one by the C API status codes and by the
// CLI error tags (E_PARAMS, E_LATTICE, ...).
enum class ErrorCode {
    ok = 0,
    invalid_params,     // bad argument values (widths, counts, weights)
    lattice,            // non-coprime p,q / incompatible sample counts
    grid_mismatch,      // operands live on different grids
    commensurability,   // requested shift is not an integer number of samples
    grid_too_narrow,    // window mass too close to the grid edge for the op
    not_a_frame,        // ab > 1, or numerically frame-deficient system
    singular_section,   // Gram section not positive definite
    insufficient_data,  // e.g. too few samples above the decay-fit floor
    band_truncation,    // symbol band K too small for the dropped-mass bound
    io,                 // file / JSON schema problems
    internal
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace gabor

#endif
