#pragma once

#include "prgsr/ambiguity.hpp"
#include "prgsr/lp.hpp"
#include "prgsr/prospect.hpp"

#include <stdexcept>

namespace prgsr {

/// Thrown when the worst-case LP is infeasible, which signals contradictory
/// elicited constraints rather than a numerical failure.
struct ElicitationInconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Row families of the linearized worst-case program, one tag per
/// constraint family so tests can audit structural completeness.
enum RowFamily : int {
    row_none = 0,
    row_psi_decreasing,
    row_psi_increasing,
    row_psi_normalization,
    row_ball_budget,
    row_ball_link,
    row_pairwise,
    row_continuity,
    row_slope_convex,
    row_slope_concave,
    row_anchor_zero,
    row_anchor_left,
    row_anchor_right,
    row_ce_upper,
    row_ce_lower,
};

/// The assembled linear program for the inner supremum at a fixed shift x.
/// Variables are the products a*psi and b*psi per weighting slice (one copy
/// for the loss-side weighting, one for the gain side), the weighting slopes
/// psi, and the ball-dual variables eta/theta.  A sign block without any
/// shifted outcome on its side is omitted.
struct WorstCaseLp {
    lp::Problem problem{lp::Sense::maximize, 0};
    std::vector<double> grid;       // value-function breakpoints at this x
    Weighting wgrid_minus;          // refined ball centers; their grids are
    Weighting wgrid_plus;           // the slice grids of the two sign blocks
    double radius_minus = 0.0;
    double radius_plus = 0.0;
    bool has_loss_block = false;
    bool has_gain_block = false;
    std::size_t pieces = 0;     // value-function pieces
    std::size_t zero_node = 0;  // index of 0 in grid

    std::size_t block_offset[2] = {0, 0}; // a/b blocks per sign
    std::size_t psi_offset[2] = {0, 0};
    std::size_t slices(int sign) const;

    std::size_t a_tilde(int sign, std::size_t slice, std::size_t piece) const;
    std::size_t b_tilde(int sign, std::size_t slice, std::size_t piece) const;
    std::size_t psi(int sign, std::size_t slice) const;
    std::size_t eta(int sign, std::size_t slice) const;
    std::size_t theta(int sign, std::size_t slice) const;
};

/// Builds the full linearized program of the worst-case constraint value at
/// shift x.  Requires every grid point within the model domain.
WorstCaseLp assemble(const AmbiguityModel& model, const Prospect& prospect,
                     double x);

struct WorstCaseTuple {
    ValueFunction value;
    Weighting w_minus;
    Weighting w_plus;
};

/// Recovers the worst-case tuple from an optimal solution by dividing the
/// slice with the largest psi (the normalization makes max psi >= 1, so the
/// quotient is well-conditioned).
WorstCaseTuple extract_worst_case(const WorstCaseLp& wc,
                                  const lp::Solution& sol);

enum class HMode {
    monolithic, // assemble + solve the full program
    decomposed, // per-slice value subproblems + small psi programs (equal
                // optimum by the block structure; used at scale)
    automatic,
};

struct HEvaluation {
    double value = 0.0;
    WorstCaseTuple tuple;
    /// value minus the distorted expectation of the extracted tuple at x;
    /// measures how far the per-slice optima are from a single consistent
    /// tuple (0 when the linearization is tight on this instance).
    double slice_gap = 0.0;
    int lp_iterations = 0;
};

/// Optimal value of the linearized program at shift x.  Strictly decreasing
/// in x; throws ElicitationInconsistency when infeasible.
double h_of_x(const AmbiguityModel& model, const Prospect& prospect, double x,
              HMode mode = HMode::automatic);

/// h(x) together with the extracted worst-case tuple and slice gap.
HEvaluation evaluate_h(const AmbiguityModel& model, const Prospect& prospect,
                       double x, HMode mode = HMode::automatic);

} // namespace prgsr
