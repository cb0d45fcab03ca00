#pragma once

namespace prgsr::reference {

/// Benchmark value function: x^(1/3) on gains, -1.5*(-x)^0.2 on losses.
double true_value(double x);

/// Tversky-Kahneman weighting p^g / (p^g + (1-p)^g). Default exponent 0.6.
double cpt_weighting(double p, double gamma = 0.6);

/// Solves cpt_weighting(p, gamma) = target for p in [0,1] by bisection.
/// Throws std::domain_error when target is outside [0,1].
double invert_cpt_weighting(double target, double gamma = 0.6);

} // namespace prgsr::reference
