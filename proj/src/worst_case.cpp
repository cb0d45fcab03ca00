#include "prgsr/worst_case.hpp"

#include "prgsr/distorted_expectation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prgsr {

namespace {

constexpr double kATildeFloor = 1e-12; // positivity proxy for a*psi
constexpr double kWeightCut = 1e-15;   // slices below this carry no mass

std::vector<double> prefix_probs(const std::vector<double>& probs) {
    std::vector<double> q(probs.size());
    double sum = 0.0, comp = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        const double t = sum + probs[k];
        if (std::abs(sum) >= probs[k])
            comp += (sum - t) + probs[k];
        else
            comp += (probs[k] - t) + sum;
        sum = t;
        q[k] = std::min(sum + comp, 1.0);
    }
    q.back() = 1.0;
    return q;
}

double overlap(double lo1, double hi1, double lo2, double hi2) {
    return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

std::size_t grid_node(const std::vector<double>& grid, double y) {
    auto it = std::lower_bound(grid.begin(), grid.end(), y - 1e-9);
    if (it == grid.end() || std::abs(*it - y) > 1e-9)
        throw std::logic_error("worst_case: point missing from its own grid");
    return static_cast<std::size_t>(it - grid.begin());
}

std::size_t node_piece(std::size_t node) { return node == 0 ? 0 : node - 1; }

// Probability intervals whose weighting increment forms pi_i: lower-tail
// cumulative intervals for the loss block, upper-tail for the gain block.
struct OutcomeInterval {
    std::size_t outcome; // index into the sorted support
    double lo, hi;
};

std::vector<OutcomeInterval> loss_intervals(const SignSplit& split,
                                            const std::vector<double>& q) {
    std::vector<OutcomeInterval> out;
    for (std::size_t k = 0; k < split.loss_count; ++k)
        out.push_back({k, k == 0 ? 0.0 : q[k - 1], q[k]});
    return out;
}

std::vector<OutcomeInterval> gain_intervals(const SignSplit& split,
                                            const std::vector<double>& q) {
    std::vector<OutcomeInterval> out;
    for (std::size_t k = split.loss_count; k < split.shifted.size(); ++k)
        out.push_back({k, 1.0 - q[k], k == 0 ? 1.0 : 1.0 - q[k - 1]});
    return out;
}

struct BallRows {
    const Weighting& center;
    double radius;
    const WeightingBall& ball;
};

} // namespace

std::size_t WorstCaseLp::slices(int sign) const {
    return sign == 0 ? wgrid_minus.piece_count() : wgrid_plus.piece_count();
}

std::size_t WorstCaseLp::a_tilde(int sign, std::size_t slice,
                                 std::size_t piece) const {
    return block_offset[sign] + slice * 2 * pieces + piece;
}

std::size_t WorstCaseLp::b_tilde(int sign, std::size_t slice,
                                 std::size_t piece) const {
    return block_offset[sign] + slice * 2 * pieces + pieces + piece;
}

std::size_t WorstCaseLp::psi(int sign, std::size_t slice) const {
    return psi_offset[sign] + slice;
}

std::size_t WorstCaseLp::eta(int sign, std::size_t slice) const {
    return psi_offset[sign] + slices(sign) + slice;
}

std::size_t WorstCaseLp::theta(int sign, std::size_t slice) const {
    return psi_offset[sign] + 2 * slices(sign) + slice;
}

WorstCaseLp assemble(const AmbiguityModel& model, const Prospect& prospect,
                     double x) {
    model.validate();

    WorstCaseLp wc;
    wc.grid = breakpoint_grid(model, prospect, x);
    wc.pieces = wc.grid.size() - 1;
    wc.zero_node = grid_node(wc.grid, 0.0);
    wc.radius_minus = model.ball_minus.radius;
    wc.radius_plus = model.ball_plus.radius;

    const SignSplit split = sign_split(prospect, x);
    wc.has_loss_block = split.loss_count > 0;
    wc.has_gain_block = split.gain_count > 0;
    const std::vector<double> q = prefix_probs(prospect.probs);

    std::vector<double> refine_points;
    for (double qq : q) {
        refine_points.push_back(qq);
        refine_points.push_back(1.0 - qq);
    }
    wc.wgrid_minus = model.ball_minus.center.refine(refine_points);
    wc.wgrid_plus = model.ball_plus.center.refine(refine_points);

    const std::size_t tm = wc.wgrid_minus.piece_count();
    const std::size_t tp = wc.wgrid_plus.piece_count();
    const std::size_t p = wc.pieces;

    // variable layout: [loss a/b block][gain a/b block][psi-eta-theta minus]
    // [psi-eta-theta plus]
    std::size_t next = 0;
    wc.block_offset[0] = next;
    if (wc.has_loss_block) next += 2 * p * tm;
    wc.block_offset[1] = next;
    if (wc.has_gain_block) next += 2 * p * tp;
    wc.psi_offset[0] = next;
    next += 3 * tm;
    wc.psi_offset[1] = next;
    next += 3 * tp;

    lp::Problem& lpp = wc.problem;
    lpp = lp::Problem(lp::Sense::maximize, next);
    for (int sign = 0; sign < 2; ++sign) {
        const bool present = sign == 0 ? wc.has_loss_block : wc.has_gain_block;
        const std::size_t t = sign == 0 ? tm : tp;
        if (present)
            for (std::size_t l = 0; l < t; ++l)
                for (std::size_t j = 0; j < p; ++j) {
                    lpp.lower[wc.a_tilde(sign, l, j)] = kATildeFloor;
                    lpp.lower[wc.b_tilde(sign, l, j)] = -lp::inf;
                }
        for (std::size_t l = 0; l < t; ++l)
            lpp.lower[wc.psi(sign, l)] = ValueFunction::slope_floor;
    }

    // ---- objective -----------------------------------------------------
    const auto add_objective = [&](int sign, const Weighting& wgrid,
                                   const std::vector<OutcomeInterval>& ivals) {
        const std::vector<double>& t = wgrid.breakpoints();
        for (const OutcomeInterval& iv : ivals) {
            const double shifted = split.shifted[iv.outcome];
            const std::size_t piece = node_piece(grid_node(wc.grid, shifted));
            for (std::size_t l = 0; l < wgrid.piece_count(); ++l) {
                const double lam = overlap(iv.lo, iv.hi, t[l], t[l + 1]);
                if (lam <= kWeightCut) continue;
                lpp.objective[wc.a_tilde(sign, l, piece)] += lam * shifted;
                lpp.objective[wc.b_tilde(sign, l, piece)] += lam;
            }
        }
    };
    if (wc.has_loss_block)
        add_objective(0, wc.wgrid_minus, loss_intervals(split, q));
    if (wc.has_gain_block)
        add_objective(1, wc.wgrid_plus, gain_intervals(split, q));

    // ---- weighting rows (both signs, block present or not) --------------
    const auto add_psi_rows = [&](int sign, const Weighting& wgrid,
                                  const WeightingBall& ball) {
        const std::vector<double>& t = wgrid.breakpoints();
        const std::vector<double>& psi0 = wgrid.slopes();
        const std::size_t tt = wgrid.piece_count();
        const std::size_t inflect = wgrid.inflection();

        for (std::size_t l = 0; l + 1 < tt; ++l) {
            std::vector<double> row(lpp.nvars, 0.0);
            if (inflect >= 2 && l + 1 <= inflect - 1) {
                row[wc.psi(sign, l + 1)] = 1.0;
                row[wc.psi(sign, l)] = -1.0;
                lpp.add_row(std::move(row), lp::Rel::le, 0.0,
                            row_psi_decreasing);
            } else if (l >= inflect) {
                row[wc.psi(sign, l)] = 1.0;
                row[wc.psi(sign, l + 1)] = -1.0;
                lpp.add_row(std::move(row), lp::Rel::le, 0.0,
                            row_psi_increasing);
            }
        }
        std::vector<double> norm(lpp.nvars, 0.0);
        for (std::size_t l = 0; l < tt; ++l)
            norm[wc.psi(sign, l)] = t[l + 1] - t[l];
        lpp.add_row(std::move(norm), lp::Rel::eq, 1.0, row_psi_normalization);

        std::vector<double> budget(lpp.nvars, 0.0);
        for (std::size_t l = 0; l < tt; ++l) {
            const double g = ball.gtilde_mass(t[l], t[l + 1]);
            budget[wc.eta(sign, l)] = g;
            budget[wc.theta(sign, l)] = g;
        }
        lpp.add_row(std::move(budget), lp::Rel::le, ball.radius,
                    row_ball_budget);

        for (std::size_t l = 0; l < tt; ++l) {
            std::vector<double> link(lpp.nvars, 0.0);
            link[wc.psi(sign, l)] = 1.0;
            link[wc.eta(sign, l)] = 1.0;
            link[wc.theta(sign, l)] = -1.0;
            lpp.add_row(std::move(link), lp::Rel::eq, psi0[l], row_ball_link);
        }
    };
    add_psi_rows(0, wc.wgrid_minus, model.ball_minus);
    add_psi_rows(1, wc.wgrid_plus, model.ball_plus);

    // ---- value-function rows, one copy per (sign, slice) ----------------
    std::vector<std::vector<double>> phi_rows;
    for (const PairwiseRecord& rec : model.pairwise)
        phi_rows.push_back(phi_piece_integrals(rec, wc.grid));
    std::vector<CeLinearForm> ce_upper, ce_lower;
    for (const CertaintyEquivalentRecord& rec : model.ce) {
        ce_upper.push_back(ce_constraint_coeffs(rec, wc.grid,
                                                model.ce_weighting_minus,
                                                model.ce_weighting_plus,
                                                CeBound::upper));
        ce_lower.push_back(ce_constraint_coeffs(rec, wc.grid,
                                                model.ce_weighting_minus,
                                                model.ce_weighting_plus,
                                                CeBound::lower));
    }

    const auto add_value_rows = [&](int sign, std::size_t tt) {
        for (std::size_t l = 0; l < tt; ++l) {
            for (const auto& phi : phi_rows) {
                std::vector<double> row(lpp.nvars, 0.0);
                for (std::size_t j = 0; j < p; ++j)
                    row[wc.a_tilde(sign, l, j)] = phi[j];
                lpp.add_row(std::move(row), lp::Rel::le, 0.0, row_pairwise);
            }
            for (std::size_t j = 1; j < p; ++j) {
                std::vector<double> row(lpp.nvars, 0.0);
                row[wc.a_tilde(sign, l, j - 1)] = wc.grid[j];
                row[wc.b_tilde(sign, l, j - 1)] = 1.0;
                row[wc.a_tilde(sign, l, j)] = -wc.grid[j];
                row[wc.b_tilde(sign, l, j)] -= 1.0;
                lpp.add_row(std::move(row), lp::Rel::eq, 0.0, row_continuity);
            }
            for (std::size_t j = 0; j + 1 < wc.zero_node; ++j) {
                std::vector<double> row(lpp.nvars, 0.0);
                row[wc.a_tilde(sign, l, j)] = 1.0;
                row[wc.a_tilde(sign, l, j + 1)] = -1.0;
                lpp.add_row(std::move(row), lp::Rel::le, 0.0, row_slope_convex);
            }
            for (std::size_t j = wc.zero_node; j + 1 < p; ++j) {
                std::vector<double> row(lpp.nvars, 0.0);
                row[wc.a_tilde(sign, l, j + 1)] = 1.0;
                row[wc.a_tilde(sign, l, j)] = -1.0;
                lpp.add_row(std::move(row), lp::Rel::le, 0.0, row_slope_concave);
            }
            {
                std::vector<double> row(lpp.nvars, 0.0);
                row[wc.b_tilde(sign, l, wc.zero_node)] = 1.0;
                lpp.add_row(std::move(row), lp::Rel::eq, 0.0, row_anchor_zero);
            }
            {
                std::vector<double> row(lpp.nvars, 0.0);
                row[wc.a_tilde(sign, l, 0)] = wc.grid.front();
                row[wc.b_tilde(sign, l, 0)] = 1.0;
                row[wc.psi(sign, l)] = -model.domain.left_value;
                lpp.add_row(std::move(row), lp::Rel::eq, 0.0, row_anchor_left);
            }
            {
                std::vector<double> row(lpp.nvars, 0.0);
                row[wc.a_tilde(sign, l, p - 1)] = wc.grid.back();
                row[wc.b_tilde(sign, l, p - 1)] = 1.0;
                row[wc.psi(sign, l)] = -model.domain.right_value;
                lpp.add_row(std::move(row), lp::Rel::eq, 0.0, row_anchor_right);
            }
            for (std::size_t k = 0; k < model.ce.size(); ++k) {
                std::vector<double> up(lpp.nvars, 0.0);
                std::vector<double> lo(lpp.nvars, 0.0);
                for (std::size_t j = 0; j < p; ++j) {
                    up[wc.a_tilde(sign, l, j)] = ce_upper[k].slope_coeffs[j];
                    up[wc.b_tilde(sign, l, j)] = ce_upper[k].intercept_coeffs[j];
                    lo[wc.a_tilde(sign, l, j)] = ce_lower[k].slope_coeffs[j];
                    lo[wc.b_tilde(sign, l, j)] = ce_lower[k].intercept_coeffs[j];
                }
                lpp.add_row(std::move(up), lp::Rel::le, 0.0, row_ce_upper);
                lpp.add_row(std::move(lo), lp::Rel::ge, 0.0, row_ce_lower);
            }
        }
    };
    if (wc.has_loss_block) add_value_rows(0, tm);
    if (wc.has_gain_block) add_value_rows(1, tp);

    return wc;
}

namespace {

Weighting extract_weighting(const Weighting& grid_center,
                            const std::vector<double>& psi) {
    const std::vector<double>& t = grid_center.breakpoints();
    double mass = 0.0;
    for (std::size_t l = 0; l < psi.size(); ++l)
        mass += psi[l] * (t[l + 1] - t[l]);
    std::vector<double> scaled = psi;
    for (double& s : scaled) s /= mass;
    return Weighting::from_slopes(t, std::move(scaled),
                                  grid_center.inflection());
}

} // namespace

WorstCaseTuple extract_worst_case(const WorstCaseLp& wc,
                                  const lp::Solution& sol) {
    if (sol.status != lp::Status::optimal)
        throw std::invalid_argument("extract_worst_case: solution not optimal");

    const int sign = wc.has_loss_block ? 0 : 1;
    const std::size_t tt = wc.slices(sign);
    std::size_t best = 0;
    for (std::size_t l = 1; l < tt; ++l)
        if (sol.x[wc.psi(sign, l)] > sol.x[wc.psi(sign, best)]) best = l;
    const double psi_best = sol.x[wc.psi(sign, best)];
    if (psi_best <= 1e-9)
        throw std::runtime_error(
            "extract_worst_case: degenerate psi on every slice");

    std::vector<double> slopes(wc.pieces);
    for (std::size_t j = 0; j < wc.pieces; ++j)
        slopes[j] = sol.x[wc.a_tilde(sign, best, j)] / psi_best;
    ValueFunction value =
        ValueFunction::from_slopes(wc.grid, std::move(slopes), -1.0);

    std::vector<double> psi_minus(wc.slices(0)), psi_plus(wc.slices(1));
    for (std::size_t l = 0; l < psi_minus.size(); ++l)
        psi_minus[l] = sol.x[wc.psi(0, l)];
    for (std::size_t l = 0; l < psi_plus.size(); ++l)
        psi_plus[l] = sol.x[wc.psi(1, l)];

    return WorstCaseTuple{std::move(value),
                          extract_weighting(wc.wgrid_minus, psi_minus),
                          extract_weighting(wc.wgrid_plus, psi_plus)};
}

// ---------------------------------------------------------------------------
// Decomposed evaluation.  For fixed weighting slopes the program splits into
// one value-polytope subproblem per (sign, slice) whose optimum scales
// linearly with psi_l, so h equals, per sign, the small LP
//     max sum_l V_l psi_l  over the inverse-S ball polytope,
// with V_l the per-slice value-polytope optimum.  This is the same optimum
// as the monolithic program because slices are coupled only through psi.
// ---------------------------------------------------------------------------

namespace {

// Value-function feasible set in slope space (intercepts eliminated through
// v(0)=0): v(y_k) is a signed cumulative sum of slopes times piece widths.
struct ValuePolytope {
    lp::Problem base{lp::Sense::maximize, 0};
    std::vector<double> grid;
    std::size_t zero_node = 0;

    std::vector<double> node_coeffs(std::size_t node) const {
        std::vector<double> c(grid.size() - 1, 0.0);
        if (node > zero_node)
            for (std::size_t j = zero_node; j < node; ++j)
                c[j] = grid[j + 1] - grid[j];
        else if (node < zero_node)
            for (std::size_t j = node; j < zero_node; ++j)
                c[j] = -(grid[j + 1] - grid[j]);
        return c;
    }
};

ValuePolytope build_value_polytope(const AmbiguityModel& model,
                                   const std::vector<double>& grid) {
    ValuePolytope vp;
    vp.grid = grid;
    vp.zero_node = grid_node(grid, 0.0);
    const std::size_t p = grid.size() - 1;
    vp.base = lp::Problem(lp::Sense::maximize, p);
    for (std::size_t j = 0; j < p; ++j)
        vp.base.lower[j] = ValueFunction::slope_floor;

    for (std::size_t j = 0; j + 1 < vp.zero_node; ++j) {
        std::vector<double> row(p, 0.0);
        row[j] = 1.0;
        row[j + 1] = -1.0;
        vp.base.add_row(std::move(row), lp::Rel::le, 0.0, row_slope_convex);
    }
    for (std::size_t j = vp.zero_node; j + 1 < p; ++j) {
        std::vector<double> row(p, 0.0);
        row[j + 1] = 1.0;
        row[j] = -1.0;
        vp.base.add_row(std::move(row), lp::Rel::le, 0.0, row_slope_concave);
    }
    vp.base.add_row(vp.node_coeffs(0), lp::Rel::eq, model.domain.left_value,
                    row_anchor_left);
    vp.base.add_row(vp.node_coeffs(p), lp::Rel::eq, model.domain.right_value,
                    row_anchor_right);
    for (const PairwiseRecord& rec : model.pairwise)
        vp.base.add_row(phi_piece_integrals(rec, grid), lp::Rel::le, 0.0,
                        row_pairwise);
    for (const CertaintyEquivalentRecord& rec : model.ce) {
        for (CeBound which : {CeBound::upper, CeBound::lower}) {
            const CeLinearForm form =
                ce_constraint_coeffs(rec, grid, model.ce_weighting_minus,
                                     model.ce_weighting_plus, which);
            // b_j = v(y_j) - a_j y_j turns intercept coefficients into
            // cumulative slope coefficients
            std::vector<double> row(p, 0.0);
            for (std::size_t j = 0; j < p; ++j) {
                const double ic = form.intercept_coeffs[j];
                row[j] += form.slope_coeffs[j] - ic * grid[j];
                if (ic != 0.0) {
                    const std::vector<double> nc = vp.node_coeffs(j);
                    for (std::size_t jj = 0; jj < p; ++jj) row[jj] += ic * nc[jj];
                }
            }
            vp.base.add_row(std::move(row),
                            which == CeBound::upper ? lp::Rel::le : lp::Rel::ge,
                            0.0,
                            which == CeBound::upper ? row_ce_upper : row_ce_lower);
        }
    }
    return vp;
}

struct SignPart {
    double value = 0.0;
    std::vector<double> psi;
    std::vector<double> best_slopes; // value argmax of the largest-psi slice
    bool solved_any = false;
    int iterations = 0;
};

SignPart solve_sign_part(const ValuePolytope& vp, const Weighting& wgrid,
                         const WeightingBall& ball,
                         const std::vector<OutcomeInterval>& ivals,
                         const std::vector<double>& shifted) {
    SignPart part;
    const std::vector<double>& t = wgrid.breakpoints();
    const std::size_t tt = wgrid.piece_count();
    const std::size_t p = vp.grid.size() - 1;

    std::vector<double> v_values(tt, 0.0);
    std::vector<std::vector<double>> v_argmax(tt);
    std::vector<char> active(tt, 0);
    int iterations = 0;
    for (std::size_t l = 0; l < tt; ++l) {
        std::vector<double> obj(p, 0.0);
        bool any = false;
        for (const OutcomeInterval& iv : ivals) {
            const double lam = overlap(iv.lo, iv.hi, t[l], t[l + 1]);
            if (lam <= kWeightCut) continue;
            const std::vector<double> nc =
                vp.node_coeffs(grid_node(vp.grid, shifted[iv.outcome]));
            for (std::size_t j = 0; j < p; ++j) obj[j] += lam * nc[j];
            any = true;
        }
        if (!any) continue;
        lp::Problem sub = vp.base;
        sub.objective = std::move(obj);
        const lp::Solution sol = lp::solve(sub);
        iterations += sol.iterations;
        if (sol.status == lp::Status::infeasible)
            throw ElicitationInconsistency(
                "worst_case: elicited constraints admit no value function");
        if (sol.status != lp::Status::optimal)
            throw std::runtime_error("worst_case: value subproblem failed");
        v_values[l] = sol.objective;
        v_argmax[l] = sol.x;
        active[l] = 1;
        part.solved_any = true;
    }

    // outer program over the weighting slopes of this sign
    lp::Problem outer(lp::Sense::maximize, 3 * tt);
    for (std::size_t l = 0; l < tt; ++l) {
        outer.lower[l] = ValueFunction::slope_floor; // psi
        outer.objective[l] = v_values[l];
    }
    const std::size_t inflect = wgrid.inflection();
    for (std::size_t l = 0; l + 1 < tt; ++l) {
        std::vector<double> row(outer.nvars, 0.0);
        if (inflect >= 2 && l + 1 <= inflect - 1) {
            row[l + 1] = 1.0;
            row[l] = -1.0;
            outer.add_row(std::move(row), lp::Rel::le, 0.0, row_psi_decreasing);
        } else if (l >= inflect) {
            row[l] = 1.0;
            row[l + 1] = -1.0;
            outer.add_row(std::move(row), lp::Rel::le, 0.0, row_psi_increasing);
        }
    }
    {
        std::vector<double> row(outer.nvars, 0.0);
        for (std::size_t l = 0; l < tt; ++l) row[l] = t[l + 1] - t[l];
        outer.add_row(std::move(row), lp::Rel::eq, 1.0, row_psi_normalization);
    }
    {
        std::vector<double> row(outer.nvars, 0.0);
        for (std::size_t l = 0; l < tt; ++l) {
            const double g = ball.gtilde_mass(t[l], t[l + 1]);
            row[tt + l] = g;      // eta
            row[2 * tt + l] = g;  // theta
        }
        outer.add_row(std::move(row), lp::Rel::le, ball.radius, row_ball_budget);
    }
    for (std::size_t l = 0; l < tt; ++l) {
        std::vector<double> row(outer.nvars, 0.0);
        row[l] = 1.0;
        row[tt + l] = 1.0;
        row[2 * tt + l] = -1.0;
        outer.add_row(std::move(row), lp::Rel::eq, wgrid.slopes()[l],
                      row_ball_link);
    }
    const lp::Solution osol = lp::solve(outer);
    iterations += osol.iterations;
    if (osol.status == lp::Status::infeasible)
        throw ElicitationInconsistency(
            "worst_case: weighting ball constraints are inconsistent");
    if (osol.status != lp::Status::optimal)
        throw std::runtime_error("worst_case: weighting subproblem failed");

    part.value = osol.objective;
    part.psi.assign(osol.x.begin(), osol.x.begin() + static_cast<std::ptrdiff_t>(tt));
    part.iterations = iterations;

    if (part.solved_any) {
        std::size_t best = 0;
        double best_psi = -1.0;
        for (std::size_t l = 0; l < tt; ++l)
            if (active[l] && part.psi[l] > best_psi) {
                best_psi = part.psi[l];
                best = l;
            }
        part.best_slopes = v_argmax[best];
    }
    return part;
}

HEvaluation evaluate_decomposed(const AmbiguityModel& model,
                                const Prospect& prospect, double x) {
    const std::vector<double> grid = breakpoint_grid(model, prospect, x);
    const SignSplit split = sign_split(prospect, x);
    const std::vector<double> q = prefix_probs(prospect.probs);

    std::vector<double> refine_points;
    for (double qq : q) {
        refine_points.push_back(qq);
        refine_points.push_back(1.0 - qq);
    }
    const Weighting wgm = model.ball_minus.center.refine(refine_points);
    const Weighting wgp = model.ball_plus.center.refine(refine_points);

    const ValuePolytope vp = build_value_polytope(model, grid);

    double h = 0.0;
    int iterations = 0;
    SignPart loss, gain;
    if (split.loss_count > 0) {
        loss = solve_sign_part(vp, wgm, model.ball_minus,
                               loss_intervals(split, q), split.shifted);
        h += loss.value;
        iterations += loss.iterations;
    }
    if (split.gain_count > 0) {
        gain = solve_sign_part(vp, wgp, model.ball_plus,
                               gain_intervals(split, q), split.shifted);
        h += gain.value;
        iterations += gain.iterations;
    }

    HEvaluation out;
    out.value = h;
    out.lp_iterations = iterations;

    const SignPart& vsrc = split.loss_count > 0 ? loss : gain;
    ValueFunction value = ValueFunction::from_slopes(
        grid, vsrc.best_slopes, -1.0);
    Weighting wm = split.loss_count > 0 ? extract_weighting(wgm, loss.psi)
                                        : wgm;
    Weighting wp = split.gain_count > 0 ? extract_weighting(wgp, gain.psi)
                                        : wgp;
    out.tuple = WorstCaseTuple{std::move(value), std::move(wm), std::move(wp)};
    out.slice_gap =
        h - distorted_expectation(out.tuple.value, out.tuple.w_minus,
                                  out.tuple.w_plus, prospect, x);
    return out;
}

HEvaluation evaluate_monolithic(const AmbiguityModel& model,
                                const Prospect& prospect, double x) {
    const WorstCaseLp wc = assemble(model, prospect, x);
    const lp::Solution sol = lp::solve(wc.problem);
    if (sol.status == lp::Status::infeasible)
        throw ElicitationInconsistency(
            "worst_case: elicited constraints admit no value function");
    if (sol.status != lp::Status::optimal)
        throw std::runtime_error("worst_case: linearized program failed");
    HEvaluation out;
    out.value = sol.objective;
    out.lp_iterations = sol.iterations;
    out.tuple = extract_worst_case(wc, sol);
    out.slice_gap =
        sol.objective - distorted_expectation(out.tuple.value,
                                              out.tuple.w_minus,
                                              out.tuple.w_plus, prospect, x);
    return out;
}

bool use_decomposed(const AmbiguityModel& model, const Prospect& prospect) {
    const std::size_t p = 3 + 3 * model.pairwise.size() + 4 * model.ce.size() +
                          prospect.size();
    const std::size_t t = model.ball_minus.center.piece_count() +
                          model.ball_plus.center.piece_count() +
                          2 * prospect.size();
    return p * t > 600;
}

} // namespace

HEvaluation evaluate_h(const AmbiguityModel& model, const Prospect& prospect,
                       double x, HMode mode) {
    if (mode == HMode::automatic)
        mode = use_decomposed(model, prospect) ? HMode::decomposed
                                               : HMode::monolithic;
    return mode == HMode::decomposed ? evaluate_decomposed(model, prospect, x)
                                     : evaluate_monolithic(model, prospect, x);
}

double h_of_x(const AmbiguityModel& model, const Prospect& prospect, double x,
              HMode mode) {
    return evaluate_h(model, prospect, x, mode).value;
}

} // namespace prgsr
