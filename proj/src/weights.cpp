#include "gabor/weights.hpp"

#include <cmath>

namespace gabor {

Weight Weight::constant() { return Weight(WeightFamily::constant, 0.0, 0.0); }

Weight Weight::polynomial(double s) {
    if (!(s > 1.0))
        fail(ErrorCode::invalid_params, "polynomial weight needs s > 1");
    return Weight(WeightFamily::polynomial, s, 0.0);
}

Weight Weight::subexponential(double lambda, double gamma) {
    if (!(lambda > 0.0) || !(gamma > 0.0) || !(gamma < 1.0))
        fail(ErrorCode::invalid_params,
             "subexponential weight needs lambda > 0 and gamma in (0,1)");
    return Weight(WeightFamily::subexponential, lambda, gamma);
}

Weight Weight::exponential(double lambda) {
    if (!(lambda > 0.0))
        fail(ErrorCode::invalid_params, "exponential weight needs lambda > 0");
    return Weight(WeightFamily::exponential, lambda, 0.0);
}

double Weight::operator()(double t) const {
    const double x = std::abs(t);
    switch (family_) {
        case WeightFamily::constant: return 1.0;
        case WeightFamily::polynomial: return std::pow(1.0 + x, param_);
        case WeightFamily::subexponential: return std::exp(param_ * std::pow(x, param2_));
        case WeightFamily::exponential: return std::exp(param_ * x);
    }
    return 1.0;
}

bool Weight::satisfies_grs() const { return family_ != WeightFamily::exponential; }

std::string Weight::family_name() const {
    switch (family_) {
        case WeightFamily::constant: return "constant";
        case WeightFamily::polynomial: return "polynomial";
        case WeightFamily::subexponential: {
            // Fold the second parameter into the name so one scalar column
            // suffices in study tables.
            char buf[32];
            std::snprintf(buf, sizeof(buf), "subexp:%g", param2_);
            return buf;
        }
        case WeightFamily::exponential: return "exponential";
    }
    return "constant";
}

bool grs_catalogue(const Weight& w) { return w.satisfies_grs(); }

}  // namespace gabor
