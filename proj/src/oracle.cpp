#include "prgsr/oracle.hpp"

#include "prgsr/distorted_expectation.hpp"
#include "prgsr/reference_functions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace prgsr {

namespace {

// floating-point dust allowance on the oracle's exact feasibility checks
constexpr double kExactTol = 1e-11;

// All patterns of length n over {1..res} that are nondecreasing
// (or nonincreasing when `increasing` is false).
void monotone_patterns(std::size_t n, std::size_t res, bool increasing,
                       std::vector<std::vector<int>>& out) {
    out.clear();
    if (n == 0) {
        out.push_back({});
        return;
    }
    std::vector<int> cur(n, 1);
    const std::function<void(std::size_t, int)> rec = [&](std::size_t pos,
                                                          int prev) {
        if (pos == n) {
            out.push_back(cur);
            return;
        }
        for (int v = increasing ? prev : 1;
             v <= (increasing ? static_cast<int>(res) : prev); ++v) {
            cur[pos] = v;
            rec(pos + 1, v);
        }
    };
    rec(0, 1);
}

// Inverse-S patterns: nonincreasing up to the inflection piece, then
// nondecreasing; the pair straddling the inflection is free.
std::vector<std::vector<int>> inverse_s_patterns(std::size_t pieces,
                                                 std::size_t inflection,
                                                 std::size_t res) {
    std::vector<std::vector<int>> head, tail, out;
    monotone_patterns(inflection, res, false, head);
    monotone_patterns(pieces - inflection, res, true, tail);
    for (const auto& h : head)
        for (const auto& t : tail) {
            std::vector<int> p = h;
            p.insert(p.end(), t.begin(), t.end());
            out.push_back(std::move(p));
        }
    return out;
}

struct SideGeometry {
    std::vector<double> widths;
    double total_value = 0.0; // |increment| the side must cover
};

// Rescales a slope pattern so its increments sum exactly to the side value.
bool rescale_side(const std::vector<int>& pattern, const SideGeometry& side,
                  double delta, std::vector<double>& slopes) {
    double mass = 0.0;
    for (std::size_t j = 0; j < pattern.size(); ++j)
        mass += delta * static_cast<double>(pattern[j]) * side.widths[j];
    if (mass <= 0.0) return false;
    const double s = side.total_value / mass;
    slopes.resize(pattern.size());
    for (std::size_t j = 0; j < pattern.size(); ++j)
        slopes[j] = delta * static_cast<double>(pattern[j]) * s;
    return true;
}

struct PsiCandidate {
    std::vector<double> psi;
    double ball_distance = 0.0;
};

} // namespace

OracleResult oracle_h(const AmbiguityModel& model, const Prospect& prospect,
                      double x, std::size_t value_grid_res,
                      std::size_t psi_grid_res) {
    model.validate();
    const std::vector<double> grid = breakpoint_grid(model, prospect, x);
    const std::size_t pieces = grid.size() - 1;
    std::size_t zero_node = 0;
    while (grid[zero_node] != 0.0) ++zero_node;

    const SignSplit split = sign_split(prospect, x);
    const std::size_t m = split.loss_count;
    const std::size_t n_out = split.shifted.size();

    // outcome nodes on the value grid
    std::vector<std::size_t> outcome_node(n_out);
    for (std::size_t k = 0; k < n_out; ++k) {
        auto it = std::lower_bound(grid.begin(), grid.end(),
                                   split.shifted[k] - 1e-9);
        outcome_node[k] = static_cast<std::size_t>(it - grid.begin());
    }

    SideGeometry neg, pos;
    for (std::size_t j = 0; j < zero_node; ++j)
        neg.widths.push_back(grid[j + 1] - grid[j]);
    for (std::size_t j = zero_node; j < pieces; ++j)
        pos.widths.push_back(grid[j + 1] - grid[j]);
    neg.total_value = -model.domain.left_value;
    pos.total_value = model.domain.right_value;

    const double wmin_neg =
        *std::min_element(neg.widths.begin(), neg.widths.end());
    const double wmin_pos =
        *std::min_element(pos.widths.begin(), pos.widths.end());
    const double amax_neg = neg.total_value / wmin_neg;
    const double amax_pos = pos.total_value / wmin_pos;
    const double delta_neg = amax_neg / static_cast<double>(value_grid_res);
    const double delta_pos = amax_pos / static_cast<double>(value_grid_res);

    const double wsum_neg =
        std::accumulate(neg.widths.begin(), neg.widths.end(), 0.0);
    const double wsum_pos =
        std::accumulate(pos.widths.begin(), pos.widths.end(), 0.0);
    // per-coordinate slope perturbation of round-then-rescale coverage
    const double ca_neg =
        delta_neg * (1.0 + amax_neg * wsum_neg /
                               std::max(neg.total_value - delta_neg * wsum_neg,
                                        1e-9));
    const double ca_pos =
        delta_pos * (1.0 + amax_pos * wsum_pos /
                               std::max(pos.total_value - delta_pos * wsum_pos,
                                        1e-9));
    const double slope_pert = std::max(ca_neg, ca_pos);

    // ---- value-side feasibility data ------------------------------------
    std::vector<std::vector<double>> phi_rows;
    std::vector<double> phi_slack;
    for (const PairwiseRecord& rec : model.pairwise) {
        phi_rows.push_back(phi_piece_integrals(rec, grid));
        double norm1 = 0.0;
        for (double c : phi_rows.back()) norm1 += std::abs(c);
        phi_slack.push_back(slope_pert * norm1 + 1e-7);
    }
    std::vector<CeLinearForm> ce_forms;
    std::vector<double> ce_slack;
    for (const CertaintyEquivalentRecord& rec : model.ce) {
        for (CeBound which : {CeBound::upper, CeBound::lower}) {
            ce_forms.push_back(ce_constraint_coeffs(rec, grid,
                                                    model.ce_weighting_minus,
                                                    model.ce_weighting_plus,
                                                    which));
            double norm1 = 0.0;
            for (std::size_t j = 0; j < pieces; ++j)
                norm1 += std::abs(ce_forms.back().slope_coeffs[j]) +
                         std::abs(ce_forms.back().intercept_coeffs[j]) *
                             (std::abs(grid[j]) + wsum_neg + wsum_pos);
            ce_slack.push_back(slope_pert * norm1 + 1e-7);
        }
    }

    // ---- weighting-side candidates ---------------------------------------
    struct SignData {
        std::vector<PsiCandidate> cands;
        std::vector<std::vector<double>> pi; // per candidate, per outcome
        double delta = 0.0;
        double cover_pert = 0.0; // per-slope perturbation incl. rescale
        double ball_slack = 0.0;
        double radius = 0.0;
    };

    const auto build_sign = [&](const WeightingBall& ball, bool loss_side,
                                SignData& sd) {
        std::vector<double> refine_pts;
        {
            double acc = 0.0;
            for (double pr : prospect.probs) {
                acc += pr;
                refine_pts.push_back(acc);
                refine_pts.push_back(1.0 - acc);
            }
        }
        const Weighting wg = ball.center.refine(refine_pts);
        const std::vector<double>& t = wg.breakpoints();
        const std::size_t tt = wg.piece_count();

        double psi_cap = 0.0, gsum = 0.0, dt_min = 1.0;
        std::vector<double> gmass(tt);
        for (std::size_t l = 0; l < tt; ++l) {
            dt_min = std::min(dt_min, t[l + 1] - t[l]);
            gmass[l] = ball.gtilde_mass(t[l], t[l + 1]);
            gsum += gmass[l];
        }
        psi_cap = 1.0 / dt_min;
        sd.delta = psi_cap / static_cast<double>(psi_grid_res);
        sd.cover_pert = sd.delta * (1.0 + psi_cap);
        sd.ball_slack = sd.cover_pert * gsum + 1e-7;
        sd.radius = ball.radius;

        std::vector<PsiCandidate> raw;
        for (const auto& pat :
             inverse_s_patterns(tt, wg.inflection(), psi_grid_res)) {
            double mass = 0.0;
            for (std::size_t l = 0; l < tt; ++l)
                mass += sd.delta * static_cast<double>(pat[l]) * (t[l + 1] - t[l]);
            PsiCandidate cand;
            cand.psi.resize(tt);
            for (std::size_t l = 0; l < tt; ++l)
                cand.psi[l] = sd.delta * static_cast<double>(pat[l]) / mass;
            raw.push_back(std::move(cand));
        }
        // the center itself is always feasible, keeping the exact side
        // non-empty even at radius zero
        raw.push_back(PsiCandidate{wg.slopes(), 0.0});

        for (PsiCandidate& cand : raw) {
            double dist = 0.0;
            for (std::size_t l = 0; l < tt; ++l)
                dist += std::abs(cand.psi[l] - wg.slopes()[l]) * gmass[l];
            cand.ball_distance = dist;
            if (dist > ball.radius + sd.ball_slack) continue;

            // pi per outcome on this side, from cumulative increments
            std::vector<double> node(tt + 1, 0.0);
            for (std::size_t l = 0; l < tt; ++l)
                node[l + 1] = node[l] + cand.psi[l] * (t[l + 1] - t[l]);
            const auto w_at = [&](double pr) {
                auto it = std::upper_bound(t.begin(), t.end(), pr);
                std::size_t l =
                    std::min(static_cast<std::size_t>(it - t.begin()),
                             t.size() - 1) - 1;
                return node[l] + cand.psi[l] * (pr - t[l]);
            };
            std::vector<double> pi;
            double acc = 0.0;
            if (loss_side) {
                double prev = 0.0;
                for (std::size_t k = 0; k < m; ++k) {
                    acc += prospect.probs[k];
                    const double q = std::min(acc, 1.0);
                    pi.push_back(w_at(q) - w_at(prev));
                    prev = q;
                }
            } else {
                double prev = 0.0;
                std::vector<double> rev;
                for (std::size_t k = n_out; k-- > m;) {
                    acc += prospect.probs[k];
                    const double q = std::min(acc, 1.0);
                    rev.push_back(w_at(q) - w_at(prev));
                    prev = q;
                }
                pi.assign(rev.rbegin(), rev.rend());
            }
            sd.cands.push_back(std::move(cand));
            sd.pi.push_back(std::move(pi));
        }
    };

    SignData loss_sd, gain_sd;
    if (m > 0) build_sign(model.ball_minus, true, loss_sd);
    if (n_out > m) build_sign(model.ball_plus, false, gain_sd);

    // ---- enumeration ------------------------------------------------------
    std::vector<std::vector<int>> neg_patterns, pos_patterns;
    monotone_patterns(neg.widths.size(), value_grid_res, true, neg_patterns);
    monotone_patterns(pos.widths.size(), value_grid_res, false, pos_patterns);

    // the reference tuple's side slopes, rescaled onto the anchors, join the
    // enumeration as explicit candidates; when the records came from the
    // reference this keeps the exact set non-empty at any resolution
    std::vector<double> ref_neg(neg.widths.size()), ref_pos(pos.widths.size());
    for (std::size_t j = 0; j < zero_node; ++j)
        ref_neg[j] = (reference::true_value(grid[j + 1]) -
                      reference::true_value(grid[j])) /
                     neg.widths[j];
    for (std::size_t j = zero_node; j < pieces; ++j)
        ref_pos[j - zero_node] = (reference::true_value(grid[j + 1]) -
                                  reference::true_value(grid[j])) /
                                 pos.widths[j - zero_node];
    const double ref_neg_mass = reference::true_value(0.0) -
                                reference::true_value(grid.front());
    const double ref_pos_mass = reference::true_value(grid.back());
    for (double& s : ref_neg) s *= neg.total_value / ref_neg_mass;
    for (double& s : ref_pos) s *= pos.total_value / ref_pos_mass;

    const double vmax =
        std::max(std::abs(model.domain.left_value), model.domain.right_value);

    std::vector<std::vector<double>> neg_candidates, pos_candidates;
    {
        std::vector<double> scratch;
        for (const auto& pn : neg_patterns)
            if (rescale_side(pn, neg, delta_neg, scratch))
                neg_candidates.push_back(scratch);
        for (const auto& pp : pos_patterns)
            if (rescale_side(pp, pos, delta_pos, scratch))
                pos_candidates.push_back(scratch);
        neg_candidates.push_back(ref_neg);
        pos_candidates.push_back(ref_pos);
    }

    OracleResult result;
    double best_exact = -lp::inf, best_relaxed = -lp::inf;
    std::vector<double> vnode(grid.size());

    for (const auto& a_neg : neg_candidates) {
        for (const auto& a_pos : pos_candidates) {
            ++result.combinations;

            // node values from v(0)=0
            vnode[zero_node] = 0.0;
            for (std::size_t j = zero_node; j-- > 0;)
                vnode[j] = vnode[j + 1] - a_neg[j] * neg.widths[j];
            for (std::size_t j = zero_node; j < pieces; ++j)
                vnode[j + 1] =
                    vnode[j] + a_pos[j - zero_node] * pos.widths[j - zero_node];

            // constraint screening: exact and slack-relaxed
            bool exact_ok = true, relaxed_ok = true;
            for (std::size_t r = 0;
                 r < phi_rows.size() && relaxed_ok; ++r) {
                double lhs = 0.0;
                for (std::size_t j = 0; j < pieces; ++j) {
                    const double a = j < zero_node ? a_neg[j]
                                                   : a_pos[j - zero_node];
                    lhs += phi_rows[r][j] * a;
                }
                if (lhs > kExactTol) exact_ok = false;
                if (lhs > phi_slack[r]) relaxed_ok = false;
            }
            for (std::size_t r = 0; r < ce_forms.size() && relaxed_ok; ++r) {
                double lhs = 0.0;
                for (std::size_t j = 0; j < pieces; ++j) {
                    const double a = j < zero_node ? a_neg[j]
                                                   : a_pos[j - zero_node];
                    const double b = vnode[j] - a * grid[j];
                    lhs += ce_forms[r].slope_coeffs[j] * a +
                           ce_forms[r].intercept_coeffs[j] * b;
                }
                const double signed_lhs = ce_forms[r].is_upper ? lhs : -lhs;
                if (signed_lhs > kExactTol) exact_ok = false;
                if (signed_lhs > ce_slack[r]) relaxed_ok = false;
            }
            if (!relaxed_ok) continue;

            // best weighting response per side given the node values
            double loss_exact = 0.0, loss_relaxed = 0.0;
            if (m > 0) {
                loss_exact = -lp::inf;
                loss_relaxed = -lp::inf;
                for (std::size_t c = 0; c < loss_sd.cands.size(); ++c) {
                    double e = 0.0;
                    for (std::size_t k = 0; k < m; ++k)
                        e += loss_sd.pi[c][k] * vnode[outcome_node[k]];
                    if (loss_sd.cands[c].ball_distance <= loss_sd.radius + kExactTol)
                        loss_exact = std::max(loss_exact, e);
                    loss_relaxed = std::max(loss_relaxed, e);
                }
            }
            double gain_exact = 0.0, gain_relaxed = 0.0;
            if (n_out > m) {
                gain_exact = -lp::inf;
                gain_relaxed = -lp::inf;
                for (std::size_t c = 0; c < gain_sd.cands.size(); ++c) {
                    double e = 0.0;
                    for (std::size_t k = m; k < n_out; ++k)
                        e += gain_sd.pi[c][k - m] * vnode[outcome_node[k]];
                    if (gain_sd.cands[c].ball_distance <= gain_sd.radius + kExactTol)
                        gain_exact = std::max(gain_exact, e);
                    gain_relaxed = std::max(gain_relaxed, e);
                }
            }

            if (relaxed_ok && loss_relaxed > -lp::inf && gain_relaxed > -lp::inf)
                best_relaxed = std::max(best_relaxed, loss_relaxed + gain_relaxed);
            if (exact_ok && loss_exact > -lp::inf && gain_exact > -lp::inf)
                best_exact = std::max(best_exact, loss_exact + gain_exact);
        }
    }

    if (best_exact == -lp::inf) {
        result.feasible = false;
        return result;
    }
    result.feasible = true;
    result.value = best_exact;

    // objective drift of round-then-rescale coverage plus the observed
    // exact-vs-relaxed spread
    const double obj_pert =
        ca_neg * wsum_neg + ca_pos * wsum_pos +
        vmax * ((m > 0 ? loss_sd.cover_pert : 0.0) +
                (n_out > m ? gain_sd.cover_pert : 0.0)) +
        1e-7;
    result.bound =
        obj_pert + std::max(0.0, best_relaxed - best_exact);
    return result;
}

double oracle_gsr_grid(const ValueFunction& v, const Weighting& w_minus,
                       const Weighting& w_plus, const Prospect& p,
                       std::size_t grid_res) {
    return oracle_gsr_grid_fn([&](double y) { return v(y); }, w_minus, w_plus,
                              p, grid_res);
}

std::pair<double, double> oracle_robust_equivalence(
    const std::vector<WorstCaseTuple>& tuples, const Prospect& prospect,
    const BisectionConfig& cfg) {
    if (tuples.empty())
        throw std::invalid_argument("oracle_robust_equivalence: no tuples");
    double worst = -lp::inf;
    for (const WorstCaseTuple& t : tuples)
        worst = std::max(
            worst,
            gsr_cpt(t.value, t.w_minus, t.w_plus, prospect, cfg).rho);

    double lo = prospect.min(), hi = prospect.max();
    const auto max_constraint = [&](double x) {
        double e = -lp::inf;
        for (const WorstCaseTuple& t : tuples)
            e = std::max(e, distorted_expectation(t.value, t.w_minus,
                                                  t.w_plus, prospect, x));
        return e;
    };
    while (hi - lo > cfg.abs_tol) {
        const double mid = 0.5 * (lo + hi);
        (max_constraint(mid) > 0.0 ? lo : hi) = mid;
    }
    return {worst, 0.5 * (lo + hi)};
}

TinyInstance make_tiny_instance(Rng& rng) {
    TinyInstance inst;
    const double lo = -0.6, hi = 0.6;

    // weighting grid uniform with 2 or 3 pieces; prospect probabilities are
    // multiples of the grid step so no slice refinement happens
    const std::size_t t_pieces =
        static_cast<std::size_t>(rng.uniform_int(2, 3));
    std::vector<double> tgrid;
    for (std::size_t k = 0; k <= t_pieces; ++k)
        tgrid.push_back(static_cast<double>(k) / static_cast<double>(t_pieces));
    tgrid.back() = 1.0;
    const Weighting center = random_weighting_on_grid(rng, tgrid);
    const double radius = rng.uniform(0.0, 0.3);

    // 0 = ball only, 1 = one pairwise record, 2 = one CE record
    const int family = static_cast<int>(rng.uniform_int(0, 2));
    const std::size_t n =
        family == 0 ? static_cast<std::size_t>(
                          rng.uniform_int(1, static_cast<std::int64_t>(t_pieces)))
                    : 1;

    std::vector<double> support, probs;
    for (std::size_t k = 0; k < n; ++k) {
        support.push_back(rng.uniform(-0.24, 0.24));
        probs.push_back(1.0 / static_cast<double>(t_pieces));
    }
    probs.back() =
        1.0 - (static_cast<double>(n) - 1.0) / static_cast<double>(t_pieces);
    // re-draw clashing support points
    std::sort(support.begin(), support.end());
    for (std::size_t k = 1; k < n; ++k)
        if (support[k] - support[k - 1] < 1e-4)
            support[k] = support[k - 1] + 1e-4 + rng.uniform(0.0, 0.01);
    inst.prospect = make_prospect(support, probs);

    AmbiguityModel& m = inst.model;
    m.domain = {lo, hi, reference::true_value(lo), reference::true_value(hi)};
    m.ce_weighting_minus = center;
    m.ce_weighting_plus = center;
    m.ball_minus = {center, radius, {}};
    m.ball_plus = {center, radius, {}};

    if (family == 1) {
        // pairwise probe with midpoint at 0 keeps the grid within 6 points;
        // the answer comes from the reference value function
        const double half = rng.uniform(0.1, 0.55);
        const double r1 = -half, r2 = 0.0, r3 = half;
        const double q = rng.uniform(0.1, 0.9);
        const double e_lottery = (1.0 - q) * reference::true_value(r1) +
                                 q * reference::true_value(r3);
        m.pairwise.push_back({r1, r2, r3, q,
                              reference::true_value(r2) > e_lottery, q});
    } else if (family == 2) {
        // certainty-equivalent interval around the reference tuple's root
        // under the center weighting; a wide interval keeps the record
        // resolvable by grid enumeration (a pinpoint interval is a
        // measure-zero slice no pattern can hit exactly)
        CertaintyEquivalentRecord rec;
        for (int attempt = 0; attempt < 64; ++attempt) {
            rec.payoff = rng.uniform(0.15, 0.5);
            rec.win_prob = rng.uniform(0.2, 0.8);
            const double w = center(rec.win_prob);
            double blo = 0.0, bhi = rec.payoff;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (blo + bhi);
                const double e = (1.0 - w) * reference::true_value(-mid) +
                                 w * reference::true_value(rec.payoff - mid);
                (e > 0.0 ? blo : bhi) = mid;
            }
            const double root = 0.5 * (blo + bhi);
            const double tau = rng.uniform(0.1, 0.35);
            rec.lower = (1.0 - tau) * root;
            rec.upper = (1.0 + tau) * root;
            if (rec.lower > 1e-6 && rec.upper < rec.payoff - 1e-6) break;
            rec = CertaintyEquivalentRecord{0.4, 0.5, 0.1, 0.2};
        }
        m.ce.push_back(rec);
    }
    m.validate();
    return inst;
}

} // namespace prgsr
