#pragma once

#include "burgers/errors.hpp"

namespace burgers {

// Parameter dictionary. p is the flexible-order intensity; everything else is
// determined: q = 4p^2/(1-p)^2 = 2 + 2cos(8*pi/kappa), gamma = 4/sqrt(kappa),
// mu = pi / (2(pi - atan(sqrt(1-2p)/p))) = kappa/8.
struct ModelParams {
    double p;
    double q;
    double kappa;
    double gamma;
    double mu;

    // Symbol law: P(HamburgerB) = P(CheeseburgerB) = 1/4,
    // P(HamburgerO) = P(CheeseburgerO) = (1-p)/4, P(FlexibleO) = p/2.
    double prob_burger() const { return 0.25; }
    double prob_typed_order() const { return (1.0 - p) / 4.0; }
    double prob_flex_order() const { return p / 2.0; }
};

// p = 1/2 is accepted as a closed-form boundary (mu = 1/2) for tests.
ModelParams derive_params(double p); // throws OutOfRange

} // namespace burgers
