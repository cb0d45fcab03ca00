#pragma once

#include "prgsr/prospect.hpp"
#include "prgsr/value_function.hpp"
#include "prgsr/weighting.hpp"

#include <functional>
#include <vector>

namespace prgsr {

/// One answered pairwise-comparison question: the DM chose between the
/// lottery Z1 = {r1 w.p. 1-p, r3 w.p. p} and the sure amount r2.  The answer
/// is stored as a signed step function phi with breakpoints r1 < r2 < r3 and
/// values weight-1 on [r1,r2), weight on [r2,r3), 0 elsewhere (negated when
/// the lottery was preferred); the constraint on the value function is
/// integral of phi dv <= 0.
struct PairwiseRecord {
    double r1 = 0.0, r2 = 0.0, r3 = 0.0;
    double weight = 0.5;        // gain-weighting value w+*(p) of the lottery
    bool certain_preferred = true;
    double lottery_prob = 0.5;  // p itself, kept for transcripts

    double phi(double y) const;
};

/// Certainty-equivalent answer for the two-point prospect
/// A = {payoff w.p. win_prob, 0 w.p. 1-win_prob}: the DM's risk value of A
/// lies in [lower, upper], both strictly inside (0, payoff).  Encoded as
/// E[v(A - upper)] <= 0 and E[v(A - lower)] >= 0 under the fixed elicitation
/// weightings.
struct CertaintyEquivalentRecord {
    double payoff = 0.0;   // r_k
    double win_prob = 0.0; // p_k
    double lower = 0.0;    // a_k^-
    double upper = 0.0;    // a_k^+
};

/// Ball of inverse-S weightings around a nominal center under the
/// test-function pseudo-metric.  A null gtilde means gtilde == 1 (plain L1
/// ball on the derivative).
struct WeightingBall {
    Weighting center;
    double radius = 0.0;
    std::function<double(double)> gtilde; // null => identically one

    /// Integral of gtilde over [a, b] (closed form when null).
    double gtilde_mass(double a, double b) const;
};

/// Domain of the value functions: [lo, hi] with pinned endpoint values.
struct ValueDomain {
    double lo = -0.5;
    double hi = 0.5;
    double left_value = -1.0;  // v(lo)
    double right_value = 1.0;  // v(hi)
};

/// Everything elicited or assumed about the DM: pairwise and
/// certainty-equivalent records, the fixed weightings the CE answers were
/// phrased under, the value-function domain, and the two weighting balls.
struct AmbiguityModel {
    std::vector<PairwiseRecord> pairwise;
    std::vector<CertaintyEquivalentRecord> ce;
    Weighting ce_weighting_minus;
    Weighting ce_weighting_plus;
    ValueDomain domain;
    WeightingBall ball_minus;
    WeightingBall ball_plus;

    void validate() const; // throws on malformed records or domain
};

/// Sorted deduplicated union of the value-function breakpoint candidates at
/// shift x: domain endpoints and 0, pairwise probe points, shifted prospect
/// support, and CE supports shifted by both bounds.  Duplicates merge at
/// 1e-12; a point outside [lo, hi] is an error.
std::vector<double> breakpoint_grid(const AmbiguityModel& model,
                                    const Prospect& prospect, double x);

/// Per-piece integrals of the record's signed phi over the grid pieces;
/// every probe point must be a grid point so phi is constant on each piece.
/// The pairwise constraint reads sum_j slopes_j * integrals_j <= 0.
std::vector<double> phi_piece_integrals(const PairwiseRecord& record,
                                        const std::vector<double>& grid);

/// Linear form over the per-piece (slope, intercept) coefficients whose
/// value is the distorted expectation of v(A_k - bound) under the fixed
/// elicitation weightings.
struct CeLinearForm {
    std::vector<double> slope_coeffs;
    std::vector<double> intercept_coeffs;
    bool is_upper = true; // upper bound: form <= 0; lower bound: form >= 0

    double value(const ValueFunction& v) const;
};

enum class CeBound { upper, lower };

CeLinearForm ce_constraint_coeffs(const CertaintyEquivalentRecord& record,
                                  const std::vector<double>& grid,
                                  const Weighting& ce_w_minus,
                                  const Weighting& ce_w_plus, CeBound which);

/// Pairwise records that pin the value function to v0 exactly: consecutive
/// breakpoint triples of v0 fix every increment ratio through opposing
/// record pairs, and the domain anchors fix the scale of each side.
std::vector<PairwiseRecord> pinning_records(const ValueFunction& v0);

/// Signed violation of a record by v (positive = violated).
double pairwise_violation(const PairwiseRecord& record, const ValueFunction& v);
double ce_violation(const CertaintyEquivalentRecord& record,
                    const AmbiguityModel& model, const ValueFunction& v,
                    CeBound which);

/// Worst violation of any pairwise/CE/shape/anchor constraint of the model
/// by the given value function.
double max_constraint_violation(const AmbiguityModel& model,
                                const ValueFunction& v);

} // namespace prgsr
