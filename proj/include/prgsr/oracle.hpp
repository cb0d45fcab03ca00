#pragma once

#include "prgsr/ambiguity.hpp"
#include "prgsr/random_instances.hpp"
#include "prgsr/shortfall.hpp"
#include "prgsr/worst_case.hpp"

#include <utility>
#include <vector>

namespace prgsr {

/// Brute-force evaluation of the worst-case constraint value by grid
/// enumeration over side-slope patterns of the value function (rescaled so
/// the endpoint anchors hold exactly) and inverse-S weighting-slope patterns
/// (rescaled to unit mass).  `value` is the maximum over patterns satisfying
/// every ambiguity constraint exactly; `bound` combines the rounding
/// Lipschitz estimate with the slack-relaxed maximum so that
///   value - bound <= h(x) <= value + slice_gap + bound
/// holds for the linearized program.
struct OracleResult {
    double value = 0.0;
    double bound = 0.0;
    bool feasible = false;   // an exactly feasible pattern exists
    long long combinations = 0;
};

OracleResult oracle_h(const AmbiguityModel& model, const Prospect& prospect,
                      double x, std::size_t value_grid_res = 10,
                      std::size_t psi_grid_res = 10);

/// (max of per-tuple shortfall risks, root of the pointwise-max constraint);
/// the two agree within twice the bisection tolerance.
std::pair<double, double> oracle_robust_equivalence(
    const std::vector<WorstCaseTuple>& tuples, const Prospect& prospect,
    const BisectionConfig& cfg = {});

/// Smallest x on a uniform grid over [min xi, max xi] with distorted
/// expectation at most zero.
template <class V>
double oracle_gsr_grid_fn(V&& value, const Weighting& w_minus,
                          const Weighting& w_plus, const Prospect& p,
                          std::size_t grid_res) {
    const double lo = p.min(), hi = p.max();
    for (std::size_t k = 0; k <= grid_res; ++k) {
        const double x =
            lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid_res);
        if (distorted_expectation_fn(value, w_minus, w_plus, p, x) <= 0.0)
            return x;
    }
    return hi;
}

double oracle_gsr_grid(const ValueFunction& v, const Weighting& w_minus,
                       const Weighting& w_plus, const Prospect& p,
                       std::size_t grid_res);

/// Desk-scale instance for the enumeration oracle: at most 3 outcomes with
/// probabilities aligned to the weighting grid (so no slice refinement), at
/// most 3 weighting pieces, at most 6 value breakpoints, and at most one
/// pairwise or certainty-equivalent record generated from a feasible
/// reference tuple.
struct TinyInstance {
    AmbiguityModel model;
    Prospect prospect;
};

TinyInstance make_tiny_instance(Rng& rng);

} // namespace prgsr
