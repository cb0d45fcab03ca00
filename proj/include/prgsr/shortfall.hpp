#pragma once

#include "prgsr/distorted_expectation.hpp"

#include <stdexcept>
#include <utility>

namespace prgsr {

struct BisectionConfig {
    double abs_tol = 1e-8;
    int max_iter = 200;
};

struct GsrResult {
    double rho = 0.0;
    int iterations = 0;
};

/// Generalized shortfall risk: the least x with distorted expectation of
/// v(xi - x) at most zero.  The constraint function is strictly decreasing in
/// x, so bisection on [min xi, max xi] converges to the unique root; the
/// bracket is valid because all shifted outcomes are >= 0 at the left end and
/// <= 0 at the right.  Returns the bracket midpoint once the bracket width is
/// below abs_tol.
template <class V>
GsrResult gsr_cpt_fn(V&& value, const Weighting& w_minus,
                     const Weighting& w_plus, const Prospect& p,
                     const BisectionConfig& cfg = {}) {
    if (!(cfg.abs_tol > 0.0) || cfg.max_iter < 1)
        throw std::invalid_argument("gsr_cpt: bad bisection config");
    double lo = p.min(), hi = p.max();
    GsrResult res;
    if (hi - lo <= cfg.abs_tol) {
        res.rho = 0.5 * (lo + hi);
        return res;
    }
    int it = 0;
    while (hi - lo > cfg.abs_tol) {
        if (++it > cfg.max_iter)
            throw std::runtime_error("gsr_cpt: max_iter exceeded");
        const double mid = 0.5 * (lo + hi);
        const double e = distorted_expectation_fn(value, w_minus, w_plus, p, mid);
        (e > 0.0 ? lo : hi) = mid;
    }
    res.rho = 0.5 * (lo + hi);
    res.iterations = it;
    return res;
}

GsrResult gsr_cpt(const ValueFunction& v, const Weighting& w_minus,
                  const Weighting& w_plus, const Prospect& p,
                  const BisectionConfig& cfg = {});

/// Returns (rho(xi + c), rho(xi) + c); a monetary risk measure makes the two
/// agree up to twice the bisection tolerance.
std::pair<double, double> gsr_translation_check(const ValueFunction& v,
                                                const Weighting& w_minus,
                                                const Weighting& w_plus,
                                                const Prospect& p, double c,
                                                const BisectionConfig& cfg = {});

} // namespace prgsr
