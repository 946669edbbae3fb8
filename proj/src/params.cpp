#include "burgers/params.hpp"

#include <cmath>

namespace burgers {

ModelParams derive_params(double p) {
    if (!(p > 0.0) || !(p <= 0.5))
        throw OutOfRange("p must lie in (0, 1/2]");
    ModelParams mp;
    mp.p = p;
    mp.q = 4.0 * p * p / ((1.0 - p) * (1.0 - p));
    const double pi = 3.14159265358979323846264338327950288;
    mp.mu = pi / (2.0 * (pi - std::atan(std::sqrt(1.0 - 2.0 * p) / p)));
    mp.kappa = 8.0 * mp.mu;
    mp.gamma = 4.0 / std::sqrt(mp.kappa);
    return mp;
}

} // namespace burgers
