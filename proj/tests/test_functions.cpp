#include "doctest.h"

#include "prgsr/distorted_expectation.hpp"
#include "prgsr/random_instances.hpp"
#include "prgsr/reference_functions.hpp"
#include "prgsr/value_function.hpp"
#include "prgsr/weighting.hpp"
#include "test_support.hpp"

#include <cmath>
#include <stdexcept>

using namespace prgsr;

namespace {

ValueFunction identity_value(double lo, double hi) {
    return ValueFunction::from_slopes({lo, 0.0, hi}, {1.0, 1.0});
}

} // namespace

TEST_CASE("value function: evaluation and conventions") {
    const ValueFunction id = identity_value(-1.0, 1.0);
    CHECK(id(0.0) == doctest::Approx(0.0));
    CHECK(id(0.5) == doctest::Approx(0.5));
    CHECK(id(-1.0) == doctest::Approx(-1.0));
    CHECK(id.left_value() == doctest::Approx(-1.0));
    CHECK(id.right_value() == doctest::Approx(1.0));
    CHECK_THROWS_AS(id(1.5), std::domain_error);
    CHECK_THROWS_AS(id(-1.0 - 1e-9), std::domain_error);

    // first piece closed, later pieces left-open right-closed
    const ValueFunction v =
        ValueFunction::from_slopes({-1.0, -0.5, 0.0, 1.0}, {1.0, 2.0, 1.5});
    CHECK(v.piece_index(-1.0) == 0);
    CHECK(v.piece_index(-0.5) == 0);
    CHECK(v.piece_index(-0.4999) == 1);
    CHECK(v.piece_index(0.0) == 1);
    CHECK(v.piece_index(1e-12) == 2);
    CHECK(v.piece_index(1.0) == 2);
}

TEST_CASE("value function: interpolated benchmark value at a breakpoint") {
    const ValueFunction v = ValueFunction::interpolate(
        reference::true_value, {-0.5, -0.25, 0.0, 0.25, 0.5});
    const double expected = -1.5 * std::pow(0.25, 0.2);
    CHECK(expected == doctest::Approx(-1.1367874248827985).epsilon(1e-12));
    CHECK(v(-0.25) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(v(0.0) == 0.0);
}

TEST_CASE("value function: shape and construction errors") {
    CHECK_THROWS_AS(ValueFunction::from_slopes({-1.0, 1.0}, {1.0}),
                    std::invalid_argument); // no zero breakpoint
    CHECK_THROWS_AS(ValueFunction::from_slopes({-1.0, 0.0, 1.0}, {1.0, 0.0}),
                    std::invalid_argument); // non-positive slope
    // concave on the losses violates the S-shape
    CHECK_THROWS_AS(
        ValueFunction::from_slopes({-1.0, -0.5, 0.0, 1.0}, {2.0, 1.0, 1.0}),
        std::invalid_argument);
    // same slopes pass once the shape check is skipped
    const ValueFunction v = ValueFunction::from_slopes(
        {-1.0, -0.5, 0.0, 1.0}, {2.0, 1.0, 1.0}, -1.0);
    CHECK(v.shape_violation() == doctest::Approx(1.0));
}

TEST_CASE("weighting: normalization and identity") {
    Rng rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const Weighting w = random_weighting(rng, 5);
        CHECK(w(0.0) == 0.0);
        CHECK(w(1.0) == 1.0);
    }
    std::vector<double> grid{0.0};
    for (int k = 1; k <= 9; ++k) grid.push_back(k / 9.0);
    grid.back() = 1.0;
    const Weighting id = identity_weighting(grid);
    CHECK(id(0.37) == doctest::Approx(0.37).epsilon(1e-14));
    CHECK_THROWS_AS(id(1.0 + 1e-9), std::domain_error);
}

TEST_CASE("weighting: benchmark interpolation") {
    const Weighting w = interpolate_weighting(
        [](double t) { return reference::cpt_weighting(t); },
        testing::tenth_grid());
    CHECK(w(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w.piece_count() == 10);
    CHECK(w.slopes()[0] ==
          doctest::Approx(reference::cpt_weighting(0.1) / 0.1).epsilon(1e-12));
    CHECK(w.is_inverse_s(1e-12));
}

TEST_CASE("weighting: interpolation places the inflection at the flattest piece") {
    const Weighting w = interpolate_weighting(
        [](double t) { return t < 0.4 ? 1.5 * t : 0.6 + (t - 0.4) / 1.5; },
        {0.0, 0.4, 1.0});
    CHECK(w.p_star() == doctest::Approx(0.4));
}

TEST_CASE("weighting: zigzag slopes are rejected, convex limit passes") {
    // slopes 1.5, 0.5, 1.2, 0.8 dip twice; no inflection index validates them
    const auto zigzag = [](double t) {
        if (t < 0.25) return 1.5 * t;
        if (t < 0.5) return 0.375 + 0.5 * (t - 0.25);
        if (t < 0.75) return 0.5 + 1.2 * (t - 0.5);
        return 0.8 + 0.8 * (t - 0.75);
    };
    CHECK_THROWS_AS(
        interpolate_weighting(zigzag, {0.0, 0.25, 0.5, 0.75, 1.0}, true),
        std::invalid_argument);
    CHECK_NOTHROW(
        interpolate_weighting(zigzag, {0.0, 0.25, 0.5, 0.75, 1.0}, false));
    // purely convex weighting is the p* -> 0 limit of the inverse-S family
    const Weighting w = interpolate_weighting(
        [](double t) { return t * t; }, {0.0, 0.5, 1.0}, true);
    CHECK(w(0.5) == doctest::Approx(0.25));
    CHECK(w.p_star() == doctest::Approx(0.0));
}

TEST_CASE("pseudo-metric: frozen examples") {
    std::vector<double> g{0.0, 0.5, 1.0};
    const Weighting uniform = identity_weighting(g);
    const Weighting split = Weighting::from_slopes(g, {0.5, 1.5}, 0);
    CHECK(pseudo_metric_l1(uniform, uniform) == doctest::Approx(0.0));
    CHECK(pseudo_metric_l1(uniform, split) == doctest::Approx(0.5).epsilon(1e-13));

    // gtilde == 1 passed explicitly reduces to the L1 metric
    CHECK(pseudo_metric_general(uniform, split, [](double) { return 1.0; }) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pseudo_metric_general(uniform, split, [](double) { return 0.0; }) ==
          doctest::Approx(0.0));
    // gtilde(t) = t: 0.5*int_0^0.5 t dt + 0.5*int_0.5^1 t dt = 0.25
    CHECK(pseudo_metric_general(uniform, split, [](double t) { return t; }) ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("pseudo-metric: symmetry and gtilde==1 reduction on random pairs") {
    Rng rng(23);
    for (int rep = 0; rep < 50; ++rep) {
        const Weighting a = random_weighting(rng, 4);
        const Weighting b = random_weighting(rng, 6);
        const double dab = pseudo_metric_l1(a, b);
        CHECK(dab == doctest::Approx(pseudo_metric_l1(b, a)).epsilon(1e-13));
        CHECK(pseudo_metric_general(a, b, [](double) { return 1.0; }) ==
              doctest::Approx(dab).epsilon(1e-12));
    }
}

TEST_CASE("distorted expectation: point mass and plain mean") {
    Rng rng(5);
    const Weighting wm = random_weighting(rng, 4);
    const Weighting wp = random_weighting(rng, 4);
    const ValueFunction v = identity_value(-2.0, 2.0);
    const Prospect point = make_prospect({0.7}, {1.0});
    CHECK(distorted_expectation(v, wm, wp, point, 0.0) ==
          doctest::Approx(0.7).epsilon(1e-12));

    const Weighting id = identity_weighting({0.0, 1.0});
    const Prospect coin = make_prospect({0.0, 1.0}, {0.5, 0.5});
    CHECK(distorted_expectation(identity_value(-2.0, 2.0), id, id, coin, 0.0) ==
          doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("distorted expectation: identity weightings equal the plain expectation") {
    Rng rng(29);
    const Weighting id = identity_weighting({0.0, 0.25, 1.0});
    for (int rep = 0; rep < 50; ++rep) {
        const ValueFunction v = random_value_function(rng, 5, -3.0, 3.0);
        const Prospect p = random_prospect(rng, 6, -1.0, 1.0);
        const double x = rng.uniform(-1.0, 1.0);
        double plain = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k)
            plain += p.probs[k] * v(p.support[k] - x);
        CHECK(distorted_expectation(v, id, id, p, x) ==
              doctest::Approx(plain).epsilon(1e-12));
    }
}

TEST_CASE("distorted expectation: agrees with the Choquet tail-integral") {
    Rng rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        const ValueFunction v = random_value_function(rng, 6, -3.0, 3.0);
        const Weighting wm = random_weighting(rng, 5);
        const Weighting wp = random_weighting(rng, 4);
        const Prospect p = random_prospect(rng, 7, -1.0, 1.0);
        const double x = rng.uniform(-1.0, 1.0);
        const double lib = distorted_expectation(v, wm, wp, p, x);
        const double oracle = testing::choquet_expectation(
            [&](double y) { return v(y); }, wm, wp, p, x);
        CHECK(lib == doctest::Approx(oracle).epsilon(1e-11));
    }
}

TEST_CASE("distorted expectation: benchmark root reproduces the reported optimum") {
    const Prospect p = testing::benchmark_prospect();
    const Weighting w = interpolate_weighting(
        [](double t) { return reference::cpt_weighting(t); },
        testing::tenth_grid());
    // At the reported 4-d.p. optimum the constraint is near zero.
    const double e_reported = distorted_expectation_fn(
        reference::true_value, w, w, p, 0.2044);
    CHECK(std::abs(e_reported) < 1e-3);
    // Root computed independently (scipy brentq on the same constraint).
    const double root = 0.20436790501154803;
    const double e_root =
        distorted_expectation_fn(reference::true_value, w, w, p, root);
    CHECK(std::abs(e_root) < 1e-10);
}

TEST_CASE("distorted expectation: monotone in the prospect (coupled)") {
    Rng rng(37);
    for (int rep = 0; rep < 100; ++rep) {
        const ValueFunction v = random_value_function(rng, 5, -4.0, 4.0);
        const Weighting wm = random_weighting(rng, 4);
        const Weighting wp = random_weighting(rng, 5);
        const Prospect lowp = random_prospect(rng, 5, -1.0, 1.0);
        Prospect highp = lowp;
        for (double& xi : highp.support) xi += rng.uniform(0.0, 0.5);
        const Prospect high = make_prospect(highp.support, highp.probs);
        const double x = rng.uniform(-0.5, 0.5);
        CHECK(distorted_expectation(v, wm, wp, lowp, x) <=
              distorted_expectation(v, wm, wp, high, x) + 1e-12);
    }
}

TEST_CASE("distorted expectation: strictly decreasing in the shift") {
    Rng rng(41);
    for (int rep = 0; rep < 200; ++rep) {
        const ValueFunction v = random_value_function(rng, 5, -4.0, 4.0);
        const Weighting wm = random_weighting(rng, 4);
        const Weighting wp = random_weighting(rng, 3);
        const Prospect p = random_prospect(rng, 5, -1.0, 1.0);
        const double a = rng.uniform(-1.0, 1.0);
        const double b = a + rng.uniform(1e-6, 1.0);
        CHECK(distorted_expectation(v, wm, wp, p, a) >
              distorted_expectation(v, wm, wp, p, b));
    }
}

TEST_CASE("distorted expectation: domain escape raises") {
    const ValueFunction v = identity_value(-0.1, 0.1);
    const Weighting id = identity_weighting({0.0, 1.0});
    const Prospect p = make_prospect({0.0, 1.0}, {0.5, 0.5});
    CHECK_THROWS_AS(distorted_expectation(v, id, id, p, 0.0),
                    std::domain_error);
}
