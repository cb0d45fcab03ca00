#include "prgsr/distorted_expectation.hpp"

#include <stdexcept>

namespace prgsr {

double distorted_expectation(const ValueFunction& v, const Weighting& w_minus,
                             const Weighting& w_plus, const Prospect& p,
                             double x) {
    if (p.min() - x < v.domain_lo() || p.max() - x > v.domain_hi())
        throw std::domain_error(
            "distorted_expectation: shifted outcome escapes value domain");
    return distorted_expectation_fn([&](double y) { return v(y); }, w_minus,
                                    w_plus, p, x);
}

} // namespace prgsr
