#include "prgsr/elicitation.hpp"

#include "prgsr/lp.hpp"
#include "prgsr/reference_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prgsr {

double SimulatedDm::value(double x) const { return reference::true_value(x); }

double SimulatedDm::weighting(double p) const {
    return reference::cpt_weighting(p, gamma);
}

double SimulatedDm::invert_weighting(double target) const {
    return reference::invert_cpt_weighting(target, gamma);
}

double ce_truth_root(const SimulatedDm& dm, double payoff, double win_prob) {
    if (!(payoff > 0.0))
        throw std::invalid_argument("ce_truth_root: payoff must be positive");
    const double w = dm.weighting(win_prob);
    double lo = 0.0, hi = payoff;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * payoff; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = std::cbrt(payoff - mid) * w -
                         1.5 * std::pow(mid, 0.2) * (1.0 - w);
        (f > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Session::Session(std::uint64_t seed, ElicitationConfig cfg)
    : cfg_(std::move(cfg)), rng_(seed) {
    if (cfg_.weighting_grid.empty())
        for (int k = 0; k <= 10; ++k)
            cfg_.weighting_grid.push_back(0.1 * static_cast<double>(k));
    truth_weighting_ = interpolate_weighting(
        [this](double t) { return dm_.weighting(t); }, cfg_.weighting_grid);
}

std::vector<double> Session::session_grid(double r1, double r2,
                                          double r3) const {
    std::vector<double> grid{cfg_.domain_lo, 0.0, cfg_.domain_hi, r1, r2, r3};
    for (const PairwiseRecord& rec : pairwise_) {
        grid.push_back(rec.r1);
        grid.push_back(rec.r2);
        grid.push_back(rec.r3);
    }
    std::sort(grid.begin(), grid.end());
    std::vector<double> out;
    for (double y : grid) {
        if (!out.empty() && y - out.back() <= 1e-12) continue;
        out.push_back(y);
    }
    for (double& y : out)
        if (std::abs(y) <= 1e-12) y = 0.0;
    return out;
}

SplitInterval Session::split_interval(double r1, double r2, double r3) const {
    const std::vector<double> grid = session_grid(r1, r2, r3);
    const std::size_t p = grid.size() - 1;
    std::size_t zero_node = 0;
    while (grid[zero_node] != 0.0) ++zero_node;

    // slope-space polytope with v(0)=0 built in; node values are signed
    // cumulative sums of slope * width
    const auto node_coeffs = [&](std::size_t node) {
        std::vector<double> c(p, 0.0);
        if (node > zero_node)
            for (std::size_t j = zero_node; j < node; ++j)
                c[j] = grid[j + 1] - grid[j];
        else if (node < zero_node)
            for (std::size_t j = node; j < zero_node; ++j)
                c[j] = -(grid[j + 1] - grid[j]);
        return c;
    };

    lp::Problem prob(lp::Sense::minimize, p);
    for (std::size_t j = 0; j + 1 < zero_node; ++j) {
        std::vector<double> row(p, 0.0);
        row[j] = 1.0;
        row[j + 1] = -1.0;
        prob.add_row(std::move(row), lp::Rel::le, 0.0);
    }
    for (std::size_t j = zero_node; j + 1 < p; ++j) {
        std::vector<double> row(p, 0.0);
        row[j + 1] = 1.0;
        row[j] = -1.0;
        prob.add_row(std::move(row), lp::Rel::le, 0.0);
    }
    const double b_l = dm_.value(cfg_.domain_lo);
    const double b_r = dm_.value(cfg_.domain_hi);
    prob.add_row(node_coeffs(0), lp::Rel::eq, b_l);
    prob.add_row(node_coeffs(p), lp::Rel::eq, b_r);
    for (const PairwiseRecord& rec : pairwise_)
        prob.add_row(phi_piece_integrals(rec, grid), lp::Rel::le, 0.0);

    // normalized value at r2: (v(r2) - b_l) / (b_r - b_l)
    std::size_t r2_node = 0;
    while (std::abs(grid[r2_node] - r2) > 1e-12) ++r2_node;
    prob.objective = node_coeffs(r2_node);

    const lp::Solution lo_sol = lp::solve(prob);
    prob.sense = lp::Sense::maximize;
    const lp::Solution hi_sol = lp::solve(prob);
    if (lo_sol.status != lp::Status::optimal ||
        hi_sol.status != lp::Status::optimal) {
        const auto name = [](lp::Status s) {
            switch (s) {
            case lp::Status::infeasible: return "infeasible";
            case lp::Status::unbounded: return "unbounded";
            case lp::Status::numeric_failure: return "numeric failure";
            default: return "optimal";
            }
        };
        throw std::runtime_error(
            std::string("split_interval: session constraint set is "
                        "corrupted (min LP ") +
            name(lo_sol.status) + ", max LP " + name(hi_sol.status) + ")");
    }
    const double scale = b_r - b_l;
    return SplitInterval{(lo_sol.objective - b_l) / scale,
                         (hi_sol.objective - b_l) / scale};
}

PairwiseRecord Session::next_pairwise_question() {
    double r1 = 0.0, r3 = 0.0;
    do {
        const double u1 = rng_.uniform(cfg_.domain_lo, cfg_.domain_hi);
        const double u2 = rng_.uniform(cfg_.domain_lo, cfg_.domain_hi);
        r1 = std::min(u1, u2);
        r3 = std::max(u1, u2);
    } while (r3 - r1 < 1e-9);
    const double r2 = 0.5 * (r1 + r3);

    const SplitInterval iv = split_interval(r1, r2, r3);
    const double q = 0.5 * (iv.i1 + iv.i2);
    const double p = dm_.invert_weighting(q);

    const double e_lottery =
        (1.0 - q) * dm_.value(r1) + q * dm_.value(r3);
    PairwiseRecord rec{r1, r2, r3, q, dm_.value(r2) > e_lottery, p};
    pairwise_.push_back(rec);
    return rec;
}

CertaintyEquivalentRecord Session::next_ce_question() {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        CertaintyEquivalentRecord rec;
        rec.payoff = rng_.uniform(0.0, cfg_.domain_hi);
        rec.win_prob =
            0.1 * static_cast<double>(rng_.uniform_int(1, 9));
        const double tau = rng_.uniform(0.0, cfg_.tau_max);
        if (rec.payoff < 1e-6) continue; // degenerate root bracket
        const double root = ce_truth_root(dm_, rec.payoff, rec.win_prob);
        rec.lower = (1.0 - tau) * root;
        rec.upper = (1.0 + tau) * root;
        if (!(rec.lower > 1e-12) || !(rec.upper < rec.payoff - 1e-12))
            continue;
        // the truth produced the record, so the robust problem stays
        // feasible; the explicit check guards against numerical surprises
        const double w = dm_.weighting(rec.win_prob);
        const double e_upper = (1.0 - w) * dm_.value(-rec.upper) +
                               w * dm_.value(rec.payoff - rec.upper);
        const double e_lower = (1.0 - w) * dm_.value(-rec.lower) +
                               w * dm_.value(rec.payoff - rec.lower);
        if (e_upper > 1e-10 || e_lower < -1e-10) continue;
        ce_.push_back(rec);
        return rec;
    }
    throw std::runtime_error("next_ce_question: rejection loop stalled");
}

AmbiguityModel Session::model(std::size_t n_pairwise, std::size_t n_ce) const {
    if (n_pairwise > pairwise_.size() || n_ce > ce_.size())
        throw std::invalid_argument("session model: prefix exceeds records");
    AmbiguityModel m;
    m.pairwise.assign(pairwise_.begin(),
                      pairwise_.begin() + static_cast<std::ptrdiff_t>(n_pairwise));
    m.ce.assign(ce_.begin(), ce_.begin() + static_cast<std::ptrdiff_t>(n_ce));
    m.ce_weighting_minus = truth_weighting_;
    m.ce_weighting_plus = truth_weighting_;
    m.domain = {cfg_.domain_lo, cfg_.domain_hi, dm_.value(cfg_.domain_lo),
                dm_.value(cfg_.domain_hi)};
    m.ball_minus = {truth_weighting_, cfg_.ball_radius, {}};
    m.ball_plus = {truth_weighting_, cfg_.ball_radius, {}};
    m.validate();
    return m;
}

AmbiguityModel Session::model() const {
    return model(pairwise_.size(), ce_.size());
}

} // namespace prgsr
