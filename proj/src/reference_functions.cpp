#include "prgsr/reference_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace prgsr::reference {

double true_value(double x) {
    return x >= 0.0 ? std::cbrt(x) : -1.5 * std::pow(-x, 0.2);
}

double cpt_weighting(double p, double gamma) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    const double a = std::pow(p, gamma);
    const double b = std::pow(1.0 - p, gamma);
    return a / (a + b);
}

double invert_cpt_weighting(double target, double gamma) {
    if (target < 0.0 || target > 1.0)
        throw std::domain_error("invert_cpt_weighting: target outside [0,1]");
    if (target == 0.0) return 0.0;
    if (target == 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cpt_weighting(mid, gamma) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace prgsr::reference
