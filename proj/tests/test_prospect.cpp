#include "doctest.h"

#include "prgsr/prospect.hpp"
#include "prgsr/random_instances.hpp"
#include "prgsr/reference_functions.hpp"
#include "prgsr/weighting.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <stdexcept>

using namespace prgsr;

TEST_CASE("make_prospect: singleton") {
    const Prospect p = make_prospect({1.0}, {1.0});
    CHECK(p.support == std::vector<double>{1.0});
    CHECK(p.probs == std::vector<double>{1.0});
}

TEST_CASE("make_prospect: merges duplicates and sorts") {
    const Prospect p = make_prospect({0.5, 0.5, 0.2}, {0.3, 0.3, 0.4});
    REQUIRE(p.size() == 2);
    CHECK(p.support[0] == doctest::Approx(0.2));
    CHECK(p.support[1] == doctest::Approx(0.5));
    CHECK(p.probs[0] == doctest::Approx(0.4));
    CHECK(p.probs[1] == doctest::Approx(0.6));
}

TEST_CASE("make_prospect: benchmark support sorts as expected") {
    const Prospect p = testing::benchmark_prospect();
    REQUIRE(p.size() == 10);
    CHECK(p.support[0] == doctest::Approx(0.0488).epsilon(1e-12));
    CHECK(p.support[1] == doctest::Approx(0.0635).epsilon(1e-12));
    CHECK(std::is_sorted(p.support.begin(), p.support.end()));
    double sum = 0.0;
    for (double q : p.probs) sum += q;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("make_prospect: error paths") {
    CHECK_THROWS_AS(make_prospect({1.0, 2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_prospect({1.0, 2.0}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_prospect({1.0, 2.0}, {0.7, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(make_prospect({}, {}), std::invalid_argument);
}

TEST_CASE("sign_split: boundary conventions") {
    const Prospect two = make_prospect({-1.0, 2.0}, {0.5, 0.5});
    SignSplit s = sign_split(two, 0.0);
    CHECK(s.loss_count == 1);
    CHECK(s.gain_count == 1);

    const Prospect pos = make_prospect({1.0, 2.0}, {0.5, 0.5});
    s = sign_split(pos, 3.0);
    CHECK(s.loss_count == 2);
    CHECK(s.gain_count == 0);

    // outcome exactly equal to the shift lands in the non-negative block
    s = sign_split(pos, 1.0);
    CHECK(s.loss_count == 0);
    CHECK(s.gain_count == 2);
    CHECK(s.shifted[0] == 0.0);
}

TEST_CASE("distortion weights: identity weightings reproduce probabilities") {
    Rng rng(7);
    const Weighting id = identity_weighting({0.0, 0.37, 1.0});
    for (int rep = 0; rep < 20; ++rep) {
        const Prospect p = random_prospect(rng, 6, -2.0, 2.0);
        const double x = rng.uniform(-2.0, 2.0);
        const SignSplit s = sign_split(p, x);
        const DistortionWeights pi = distortion_weights(s, p.probs, id, id);
        for (std::size_t k = 0; k < p.size(); ++k)
            CHECK(pi.weights[k] == doctest::Approx(p.probs[k]).epsilon(1e-14));
    }
}

TEST_CASE("distortion weights: quadratic weighting two-atom example") {
    // w(p) = p^2 interpolated on a grid containing 0.5 evaluates exactly at
    // the cumulative probabilities, so pi_-1 = w(0.5) = 0.25 and
    // pi_0 = w(0.5) = 0.25.
    std::vector<double> grid;
    for (int k = 0; k <= 100; ++k) grid.push_back(0.01 * k);
    const Weighting wsq =
        interpolate_weighting([](double p) { return p * p; }, grid);
    const Prospect p = make_prospect({-0.5, 0.5}, {0.5, 0.5});
    const SignSplit s = sign_split(p, 0.0);
    REQUIRE(s.loss_count == 1);
    const DistortionWeights pi = distortion_weights(s, p.probs, wsq, wsq);
    CHECK(pi.weights[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(pi.weights[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("distortion weights: benchmark prospect at x=0 matches tail differences") {
    const Prospect p = testing::benchmark_prospect();
    const Weighting w = interpolate_weighting(
        [](double t) { return reference::cpt_weighting(t); },
        testing::tenth_grid());
    const SignSplit s = sign_split(p, 0.0);
    REQUIRE(s.loss_count == 0);
    const DistortionWeights pi = distortion_weights(s, p.probs, w, w);
    for (std::size_t k = 0; k < 10; ++k) {
        const double tail_hi = 0.1 * static_cast<double>(10 - k);
        const double expected = reference::cpt_weighting(tail_hi) -
                                reference::cpt_weighting(tail_hi - 0.1);
        CHECK(pi.weights[k] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("distortion weights: symmetric weighting sums to one") {
    const Weighting w = interpolate_weighting(
        [](double t) { return reference::cpt_weighting(t); },
        testing::tenth_grid());
    Rng rng(11);
    const Prospect p = testing::benchmark_prospect();
    for (int rep = 0; rep < 25; ++rep) {
        const double x = rng.uniform(0.0, 0.5);
        const SignSplit s = sign_split(p, x);
        const DistortionWeights pi = distortion_weights(s, p.probs, w, w);
        CHECK(pi.sum() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("distortion weights: invariant under support re-indexing") {
    Rng rng(13);
    std::vector<double> out = testing::benchmark_support();
    std::vector<double> probs(out.size(), 0.1);
    const Weighting w = random_weighting(rng, 5);
    const Prospect a = make_prospect(out, probs);
    // shuffled copy
    std::vector<std::size_t> order(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) order[k] = out.size() - 1 - k;
    std::vector<double> out2, probs2;
    for (std::size_t k : order) {
        out2.push_back(out[k]);
        probs2.push_back(probs[k]);
    }
    const Prospect b = make_prospect(out2, probs2);
    const double x = 0.21;
    const DistortionWeights pa =
        distortion_weights(sign_split(a, x), a.probs, w, w);
    const DistortionWeights pb =
        distortion_weights(sign_split(b, x), b.probs, w, w);
    REQUIRE(pa.weights.size() == pb.weights.size());
    for (std::size_t k = 0; k < pa.weights.size(); ++k)
        CHECK(pa.weights[k] == doctest::Approx(pb.weights[k]).epsilon(1e-15));
}

TEST_CASE("distortion weights: non-negative for increasing weightings") {
    Rng rng(17);
    for (int rep = 0; rep < 200; ++rep) {
        const Prospect p =
            random_prospect(rng, 1 + static_cast<std::size_t>(rng.uniform_int(0, 7)),
                            -1.0, 1.0);
        const Weighting wm = random_weighting(rng, 4);
        const Weighting wp = random_weighting(rng, 3);
        const double x = rng.uniform(-1.2, 1.2);
        const DistortionWeights pi =
            distortion_weights(sign_split(p, x), p.probs, wm, wp);
        for (double v : pi.weights) CHECK(v >= -1e-14);
    }
}
