#ifndef GABOR_WEIGHTS_HPP
#define GABOR_WEIGHTS_HPP

#include <string>

#include "gabor/errors.hpp"

namespace gabor {

enum class WeightFamily { constant, polynomial, subexponential, exponential };

// Submultiplicative weight function from the catalogued families:
//   constant            w(t) = 1
//   polynomial(s)       w(t) = (1+|t|)^s,            s > 1
//   subexponential(l,g) w(t) = exp(l |t|^g),          l > 0, 0 < g < 1
//   exponential(l)      w(t) = exp(l |t|),            l > 0
// The GRS flag records whether the family satisfies the
// Gelfand-Raikov-Shilov condition (lim w(n)^{1/n} = 1): true for all but
// the exponential family.
class Weight {
  public:
    static Weight constant();
    static Weight polynomial(double s);
    static Weight subexponential(double lambda, double gamma);
    static Weight exponential(double lambda);

    WeightFamily family() const { return family_; }
    double param() const { return param_; }        // s or lambda
    double param2() const { return param2_; }      // gamma for subexponential
    bool satisfies_grs() const;

    double operator()(double t) const;

    std::string family_name() const;  // e.g. "polynomial", "subexp:0.5"

  private:
    Weight(WeightFamily family, double param, double param2)
        : family_(family), param_(param), param2_(param2) {}

    WeightFamily family_;
    double param_;
    double param2_;
};

// Closed-form GRS verdict for a catalogued weight.
bool grs_catalogue(const Weight& w);

}  // namespace gabor

#endif
