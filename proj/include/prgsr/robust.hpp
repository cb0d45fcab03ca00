#pragma once

#include "prgsr/shortfall.hpp"
#include "prgsr/worst_case.hpp"

namespace prgsr {

struct RobustResult {
    double rho = 0.0;
    WorstCaseTuple worst_case;
    double h_at_rho = 0.0;
    double slice_gap = 0.0;
    int h_evaluations = 0;
};

/// Preference-robust shortfall risk: the least x whose worst-case distorted
/// expectation h(x) is at most zero, computed by bisection on the strictly
/// decreasing h over [min xi, max xi].  The returned x is the upper end of
/// the final bracket, so h(x) <= 0 holds up to solver tolerance (a
/// conservatively feasible capital level); the worst-case tuple is extracted
/// at that x.
RobustResult robust_shortfall(const AmbiguityModel& model, const Prospect& prospect,
                  const BisectionConfig& cfg = {},
                  HMode mode = HMode::automatic);

/// Largest single-tuple shortfall risk over a finite tuple set.
double worst_gsr_finite(const std::vector<WorstCaseTuple>& tuples,
                        const Prospect& prospect,
                        const BisectionConfig& cfg = {});

} // namespace prgsr
