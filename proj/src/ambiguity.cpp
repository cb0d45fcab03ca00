#include "prgsr/ambiguity.hpp"

#include "prgsr/distorted_expectation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prgsr {

double PairwiseRecord::phi(double y) const {
    double base = 0.0;
    if (y >= r1 && y < r2)
        base = weight - 1.0;
    else if (y >= r2 && y < r3)
        base = weight;
    return certain_preferred ? base : -base;
}

double WeightingBall::gtilde_mass(double a, double b) const {
    if (!gtilde) return b - a;
    return gauss_legendre_16(gtilde, a, b);
}

void AmbiguityModel::validate() const {
    if (!(domain.lo < 0.0 && 0.0 < domain.hi))
        throw std::invalid_argument("ambiguity: domain must contain 0 strictly");
    if (!(domain.left_value < 0.0 && 0.0 < domain.right_value))
        throw std::invalid_argument("ambiguity: endpoint values must straddle 0");
    for (const PairwiseRecord& r : pairwise) {
        if (!(r.r1 < r.r2 && r.r2 < r.r3))
            throw std::invalid_argument("ambiguity: pairwise probes not ordered");
        if (!(r.weight >= 0.0 && r.weight <= 1.0))
            throw std::invalid_argument("ambiguity: pairwise weight outside [0,1]");
        if (r.r1 < domain.lo - 1e-12 || r.r3 > domain.hi + 1e-12)
            throw std::invalid_argument("ambiguity: probe escapes the domain");
    }
    for (const CertaintyEquivalentRecord& r : ce) {
        if (!(r.lower <= r.upper))
            throw std::invalid_argument("ambiguity: CE bounds out of order");
        if (!(0.0 < r.lower && r.upper < r.payoff))
            throw std::invalid_argument(
                "ambiguity: CE bounds must lie strictly inside (0, payoff)");
        if (!(r.win_prob > 0.0 && r.win_prob < 1.0))
            throw std::invalid_argument("ambiguity: CE win probability degenerate");
    }
    if (ball_minus.radius < 0.0 || ball_plus.radius < 0.0)
        throw std::invalid_argument("ambiguity: negative ball radius");
}

std::vector<double> breakpoint_grid(const AmbiguityModel& model,
                                    const Prospect& prospect, double x) {
    std::vector<double> pts{model.domain.lo, 0.0, model.domain.hi};
    for (const PairwiseRecord& r : model.pairwise) {
        pts.push_back(r.r1);
        pts.push_back(r.r2);
        pts.push_back(r.r3);
    }
    for (double xi : prospect.support) pts.push_back(xi - x);
    for (const CertaintyEquivalentRecord& r : model.ce) {
        pts.push_back(0.0 - r.upper);
        pts.push_back(0.0 - r.lower);
        pts.push_back(r.payoff - r.upper);
        pts.push_back(r.payoff - r.lower);
    }
    for (double y : pts)
        if (y < model.domain.lo - 1e-12 || y > model.domain.hi + 1e-12)
            throw std::domain_error("breakpoint_grid: point escapes the domain");

    std::sort(pts.begin(), pts.end());
    std::vector<double> grid;
    for (double y : pts) {
        if (!grid.empty() && y - grid.back() <= 1e-12) continue;
        grid.push_back(y);
    }
    // snap the values that must be hit exactly
    grid.front() = model.domain.lo;
    grid.back() = model.domain.hi;
    for (double& y : grid)
        if (std::abs(y) <= 1e-12) y = 0.0;
    return grid;
}

namespace {

std::size_t grid_index(const std::vector<double>& grid, double y,
                       const char* what) {
    auto it = std::lower_bound(grid.begin(), grid.end(), y - 1e-9);
    if (it == grid.end() || std::abs(*it - y) > 1e-9)
        throw std::invalid_argument(std::string(what) +
                                    ": required point missing from the grid");
    return static_cast<std::size_t>(it - grid.begin());
}

// Piece containing a grid node as an evaluation point: node k>0 belongs to
// piece k-1 ((y_{k-1}, y_k]), node 0 to piece 0.
std::size_t node_piece(std::size_t node) { return node == 0 ? 0 : node - 1; }

} // namespace

std::vector<double> phi_piece_integrals(const PairwiseRecord& record,
                                        const std::vector<double>& grid) {
    grid_index(grid, record.r1, "phi_piece_integrals");
    grid_index(grid, record.r2, "phi_piece_integrals");
    grid_index(grid, record.r3, "phi_piece_integrals");
    std::vector<double> out(grid.size() - 1, 0.0);
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
        const double mid = 0.5 * (grid[j] + grid[j + 1]);
        out[j] = record.phi(mid) * (grid[j + 1] - grid[j]);
    }
    return out;
}

double CeLinearForm::value(const ValueFunction& v) const {
    if (v.piece_count() != slope_coeffs.size())
        throw std::invalid_argument(
            "CeLinearForm: value function lives on a different grid");
    double total = 0.0;
    for (std::size_t j = 0; j < slope_coeffs.size(); ++j)
        total += slope_coeffs[j] * v.slopes()[j] +
                 intercept_coeffs[j] * v.intercepts()[j];
    return total;
}

CeLinearForm ce_constraint_coeffs(const CertaintyEquivalentRecord& record,
                                  const std::vector<double>& grid,
                                  const Weighting& ce_w_minus,
                                  const Weighting& ce_w_plus, CeBound which) {
    const double bound = which == CeBound::upper ? record.upper : record.lower;
    const Prospect atoms =
        make_prospect({0.0, record.payoff}, {1.0 - record.win_prob, record.win_prob});
    const SignSplit split = sign_split(atoms, bound);
    const DistortionWeights pi =
        distortion_weights(split, atoms.probs, ce_w_minus, ce_w_plus);

    CeLinearForm form;
    form.is_upper = which == CeBound::upper;
    form.slope_coeffs.assign(grid.size() - 1, 0.0);
    form.intercept_coeffs.assign(grid.size() - 1, 0.0);
    for (std::size_t k = 0; k < split.shifted.size(); ++k) {
        const double z = split.shifted[k];
        const std::size_t j = node_piece(grid_index(grid, z, "ce_constraint_coeffs"));
        form.slope_coeffs[j] += pi.weights[k] * z;
        form.intercept_coeffs[j] += pi.weights[k];
    }
    return form;
}

std::vector<PairwiseRecord> pinning_records(const ValueFunction& v0) {
    const std::vector<double>& y = v0.breakpoints();
    std::vector<PairwiseRecord> records;
    for (std::size_t k = 0; k + 2 < y.size(); ++k) {
        const double d1 = v0(y[k + 1]) - v0(y[k]);
        const double d2 = v0(y[k + 2]) - v0(y[k + 1]);
        PairwiseRecord rec;
        rec.r1 = y[k];
        rec.r2 = y[k + 1];
        rec.r3 = y[k + 2];
        rec.weight = d1 / (d1 + d2);
        rec.lottery_prob = rec.weight;
        rec.certain_preferred = true;
        records.push_back(rec);
        rec.certain_preferred = false;
        records.push_back(rec);
    }
    return records;
}

double pairwise_violation(const PairwiseRecord& record, const ValueFunction& v) {
    const std::vector<double>& y = v.breakpoints();
    std::vector<double> pts{record.r1, record.r2, record.r3};
    pts.insert(pts.end(), y.begin(), y.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double mid = 0.5 * (pts[k] + pts[k + 1]);
        if (mid < v.domain_lo() || mid > v.domain_hi()) continue;
        total += record.phi(mid) * (v(pts[k + 1]) - v(pts[k]));
    }
    return total;
}

double ce_violation(const CertaintyEquivalentRecord& record,
                    const AmbiguityModel& model, const ValueFunction& v,
                    CeBound which) {
    const double bound = which == CeBound::upper ? record.upper : record.lower;
    const Prospect atoms =
        make_prospect({0.0, record.payoff}, {1.0 - record.win_prob, record.win_prob});
    const double e =
        distorted_expectation(v, model.ce_weighting_minus,
                              model.ce_weighting_plus, atoms, bound);
    return which == CeBound::upper ? e : -e;
}

double max_constraint_violation(const AmbiguityModel& model,
                                const ValueFunction& v) {
    double worst = v.shape_violation();
    worst = std::max(worst, std::abs(v(0.0)));
    worst = std::max(worst, std::abs(v.left_value() - model.domain.left_value));
    worst = std::max(worst, std::abs(v.right_value() - model.domain.right_value));
    for (const PairwiseRecord& r : model.pairwise)
        worst = std::max(worst, pairwise_violation(r, v));
    for (const CertaintyEquivalentRecord& r : model.ce) {
        worst = std::max(worst, ce_violation(r, model, v, CeBound::upper));
        worst = std::max(worst, ce_violation(r, model, v, CeBound::lower));
    }
    return worst;
}

} // namespace prgsr
