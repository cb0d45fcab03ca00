#include "doctest.h"

#include "prgsr/distorted_expectation.hpp"
#include "prgsr/random_instances.hpp"
#include "prgsr/reference_functions.hpp"
#include "prgsr/worst_case.hpp"
#include "test_support.hpp"

#include <cmath>
#include <set>

using namespace prgsr;

TEST_CASE("worst case: pinned singleton reproduces the distorted expectation") {
    const ValueFunction v0 = testing::two_line_value(-0.6, 0.6, 1.4, 0.8);
    const Weighting w0 = interpolate_weighting(
        [](double t) { return reference::cpt_weighting(t); },
        testing::tenth_grid());
    const AmbiguityModel m = testing::pinned_model(v0, w0);
    const Prospect p = make_prospect({0.05, 0.21, 0.4}, {0.3, 0.5, 0.2});

    for (double x : {0.02, 0.2, 0.33}) {
        const double direct = distorted_expectation(v0, w0, w0, p, x);
        const double via_lp = h_of_x(m, p, x, HMode::monolithic);
        CHECK(via_lp == doctest::Approx(direct).epsilon(1e-8).scale(1.0));
        const double via_decomp = h_of_x(m, p, x, HMode::decomposed);
        CHECK(via_decomp == doctest::Approx(direct).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("worst case: identity center, zero radius, pinned linear value") {
    const ValueFunction v0 = testing::two_line_value(-1.0, 1.0, 1.0, 1.0);
    const Weighting id = identity_weighting({0.0, 0.5, 1.0});
    const AmbiguityModel m = testing::pinned_model(v0, id);
    const Prospect p = make_prospect({-0.2, 0.1, 0.5}, {0.25, 0.4, 0.35});
    double mean = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
        mean += p.probs[k] * p.support[k];
    for (double x : {-0.1, 0.0, 0.22})
        CHECK(h_of_x(m, p, x) == doctest::Approx(mean - x).epsilon(1e-8));
}

TEST_CASE("worst case: h sign at the bracket ends") {
    Rng rng(101);
    const AmbiguityModel m = testing::truthful_model(rng, 3, 2, 0.02);
    const Prospect p = testing::benchmark_prospect();
    CHECK(h_of_x(m, p, p.max()) <= 1e-9);
    CHECK(h_of_x(m, p, p.min()) >= -1e-9);
}

TEST_CASE("worst case: h decreases in x and exceeds the truth value") {
    Rng rng(103);
    const AmbiguityModel m = testing::truthful_model(rng, 4, 3, 0.01);
    const Prospect p = testing::benchmark_prospect();
    const Weighting wtrue = interpolate_weighting(
        [](double t) { return reference::cpt_weighting(t); },
        testing::tenth_grid());

    double prev = lp::inf;
    for (int k = 0; k <= 50; ++k) {
        const double x =
            p.min() + (p.max() - p.min()) * static_cast<double>(k) / 50.0;
        const double h = h_of_x(m, p, x);
        CHECK(h <= prev + 1e-7);
        if (prev != lp::inf && std::abs(h) > 1e-6 && std::abs(prev) > 1e-6)
            CHECK(h < prev - 1e-9);
        prev = h;
        // the discretized truth stays feasible, so h dominates its value
        const double truth_val =
            distorted_expectation_fn(reference::true_value, wtrue, wtrue, p, x);
        CHECK(h >= truth_val - 1e-8);
    }
}

TEST_CASE("worst case: h grows with the radius, shrinks with records") {
    Rng rng(107);
    const Prospect p = testing::benchmark_prospect();
    const double x = 0.2;

    AmbiguityModel small = testing::truthful_model(rng, 3, 2, 0.01);
    AmbiguityModel large = small;
    large.ball_minus.radius = 0.05;
    large.ball_plus.radius = 0.05;
    CHECK(h_of_x(large, p, x) >= h_of_x(small, p, x) - 1e-8);

    Rng rng2(107);
    AmbiguityModel more = testing::truthful_model(rng2, 6, 4, 0.01);
    // `more` extends `small`'s records (same seed draws the same first ones)
    for (std::size_t k = 0; k < small.pairwise.size(); ++k)
        CHECK(more.pairwise[k].r1 == small.pairwise[k].r1);
    CHECK(h_of_x(more, p, x) <= h_of_x(small, p, x) + 1e-8);
}

TEST_CASE("worst case: monolithic and decomposed paths agree") {
    Rng rng(109);
    for (int rep = 0; rep < 8; ++rep) {
        const AmbiguityModel m = testing::truthful_model(
            rng, static_cast<std::size_t>(rng.uniform_int(0, 2)),
            static_cast<std::size_t>(rng.uniform_int(0, 2)),
            rng.uniform(0.0, 0.05));
        const Prospect p = random_prospect(
            rng, 1 + static_cast<std::size_t>(rng.uniform_int(0, 2)), 0.02,
            0.45);
        const double x = rng.uniform(p.min(), p.max());
        const double mono = h_of_x(m, p, x, HMode::monolithic);
        const double deco = h_of_x(m, p, x, HMode::decomposed);
        CHECK(mono == doctest::Approx(deco).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("worst case: assembled program covers every constraint family") {
    Rng rng(113);
    const AmbiguityModel m = testing::truthful_model(rng, 2, 1, 0.01);
    const Prospect p = make_prospect({0.1, 0.3}, {0.5, 0.5});
    const WorstCaseLp wc = assemble(m, p, 0.2);
    std::set<int> tags;
    for (const lp::Row& row : wc.problem.rows) tags.insert(row.tag);
    for (int tag : {row_psi_decreasing, row_psi_increasing,
                    row_psi_normalization, row_ball_budget, row_ball_link,
                    row_pairwise, row_continuity, row_slope_convex,
                    row_slope_concave, row_anchor_zero, row_anchor_left,
                    row_anchor_right, row_ce_upper, row_ce_lower})
        CHECK(tags.count(tag) == 1);

    // variable count: one a-tilde/b-tilde pair per (sign, slice, piece) for
    // present blocks plus psi/eta/theta per sign
    const std::size_t tm = wc.wgrid_minus.piece_count();
    const std::size_t tp = wc.wgrid_plus.piece_count();
    std::size_t expect = 3 * (tm + tp);
    if (wc.has_loss_block) expect += 2 * wc.pieces * tm;
    if (wc.has_gain_block) expect += 2 * wc.pieces * tp;
    CHECK(wc.problem.nvars == expect);
}

TEST_CASE("worst case: extraction satisfies the ambiguity constraints") {
    Rng rng(127);
    for (int rep = 0; rep < 6; ++rep) {
        const AmbiguityModel m = testing::truthful_model(
            rng, 1 + static_cast<std::size_t>(rng.uniform_int(0, 2)),
            static_cast<std::size_t>(rng.uniform_int(0, 2)),
            rng.uniform(0.0, 0.08));
        const Prospect p = random_prospect(rng, 3, 0.05, 0.45);
        const double x = rng.uniform(p.min(), p.max());
        for (HMode mode : {HMode::monolithic, HMode::decomposed}) {
            const HEvaluation ev = evaluate_h(m, p, x, mode);
            CHECK(max_constraint_violation(m, ev.tuple.value) <= 1e-6);
            CHECK(pseudo_metric_general(ev.tuple.w_minus, m.ball_minus.center,
                                        m.ball_minus.gtilde) <=
                  m.ball_minus.radius + 1e-8);
            CHECK(pseudo_metric_general(ev.tuple.w_plus, m.ball_plus.center,
                                        m.ball_plus.gtilde) <=
                  m.ball_plus.radius + 1e-8);
            // the extracted tuple is feasible, so the gap is non-negative
            CHECK(ev.slice_gap >= -1e-7);
            CHECK(ev.value >= distorted_expectation(ev.tuple.value,
                                                    ev.tuple.w_minus,
                                                    ev.tuple.w_plus, p, x) -
                                  1e-7);
        }
    }
}

TEST_CASE("worst case: zero-radius extraction returns the center weighting") {
    const ValueFunction v0 = testing::two_line_value(-0.6, 0.6, 1.2, 0.9);
    const Weighting w0 = interpolate_weighting(
        [](double t) { return reference::cpt_weighting(t); },
        testing::tenth_grid());
    const AmbiguityModel m = testing::pinned_model(v0, w0);
    const Prospect p = make_prospect({0.1, 0.3}, {0.4, 0.6});
    const HEvaluation ev = evaluate_h(m, p, 0.2, HMode::monolithic);
    // slopes match the refined center slice by slice
    const Weighting ref = w0.refine({0.4, 0.6}); // cumulative probabilities
    REQUIRE(ev.tuple.w_minus.piece_count() == ref.piece_count());
    for (std::size_t l = 0; l < ref.piece_count(); ++l) {
        CHECK(ev.tuple.w_minus.slopes()[l] ==
              doctest::Approx(ref.slopes()[l]).epsilon(1e-10));
        CHECK(ev.tuple.w_plus.slopes()[l] ==
              doctest::Approx(ref.slopes()[l]).epsilon(1e-10));
    }
    // pinned value recovered exactly
    for (double y : {-0.5, -0.2, 0.15, 0.55})
        CHECK(ev.tuple.value(y) == doctest::Approx(v0(y)).epsilon(1e-8));
}

TEST_CASE("worst case: benchmark-scale program solves to optimality") {
    Rng rng(233);
    const AmbiguityModel m = testing::truthful_model(rng, 5, 5, 0.01);
    const Prospect p = testing::benchmark_prospect();
    const WorstCaseLp wc = assemble(m, p, 0.2);
    CHECK(wc.problem.nvars > 1500); // both sign blocks at T = 10 slices
    const lp::Solution sol = lp::solve(wc.problem);
    REQUIRE(sol.status == lp::Status::optimal);
    const double deco = h_of_x(m, p, 0.2, HMode::decomposed);
    CHECK(sol.objective == doctest::Approx(deco).epsilon(1e-7).scale(1.0));
}

TEST_CASE("worst case: infeasible elicitation surfaces as inconsistency") {
    // two opposing pairwise records with incompatible strict weights
    AmbiguityModel m;
    m.ce_weighting_minus = identity_weighting({0.0, 1.0});
    m.ce_weighting_plus = identity_weighting({0.0, 1.0});
    m.domain = {-0.5, 0.5, -1.0, 1.0};
    const Weighting w0 = identity_weighting({0.0, 0.5, 1.0});
    m.ball_minus = {w0, 0.0, {}};
    m.ball_plus = {w0, 0.0, {}};
    // d2/d1 <= 1/3 and d2/d1 >= 3 cannot both hold
    m.pairwise.push_back({-0.2, 0.0, 0.2, 0.75, true, 0.75});
    m.pairwise.push_back({-0.2, 0.0, 0.2, 0.25, false, 0.25});
    const Prospect p = make_prospect({0.0, 0.1}, {0.5, 0.5});
    CHECK_THROWS_AS(h_of_x(m, p, 0.05), ElicitationInconsistency);
}
