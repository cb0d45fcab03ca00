#pragma once

#include "prgsr/prospect.hpp"
#include "prgsr/value_function.hpp"
#include "prgsr/weighting.hpp"

#include <cmath>
#include <utility>

namespace prgsr {

/// Distorted (rank-dependent) expectation of v(xi - x): the loss-side
/// weighting distorts lower-tail cumulative probabilities, the gain-side
/// weighting upper tails, and the result is the weighted sum of v at the
/// shifted outcomes.  Works with any value callable; the ValueFunction
/// overload additionally enforces the domain.
template <class V>
double distorted_expectation_fn(V&& value, const Weighting& w_minus,
                                const Weighting& w_plus, const Prospect& p,
                                double x) {
    const SignSplit split = sign_split(p, x);
    const DistortionWeights pi =
        distortion_weights(split, p.probs, w_minus, w_plus);
    double total = 0.0, comp = 0.0;
    for (std::size_t k = 0; k < split.shifted.size(); ++k) {
        const double term = pi.weights[k] * value(split.shifted[k]);
        const double t = total + term; // Neumaier compensation
        if (std::abs(total) >= std::abs(term))
            comp += (total - t) + term;
        else
            comp += (term - t) + total;
        total = t;
    }
    return total + comp;
}

double distorted_expectation(const ValueFunction& v, const Weighting& w_minus,
                             const Weighting& w_plus, const Prospect& p,
                             double x);

} // namespace prgsr
