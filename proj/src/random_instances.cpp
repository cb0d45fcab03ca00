#include "prgsr/random_instances.hpp"

#include <algorithm>
#include <cmath>

namespace prgsr {

Prospect random_prospect(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> support, probs;
    support.reserve(n);
    probs.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        support.push_back(rng.uniform(lo, hi));
        probs.push_back(0.05 + rng.uniform());
    }
    double sum = 0.0;
    for (double p : probs) sum += p;
    for (double& p : probs) p /= sum;
    return make_prospect(support, probs);
}

Weighting random_weighting(Rng& rng, std::size_t pieces) {
    std::vector<double> breaks{0.0};
    for (std::size_t k = 1; k < pieces; ++k)
        breaks.push_back(rng.uniform(0.02, 0.98));
    breaks.push_back(1.0);
    std::sort(breaks.begin(), breaks.end());
    // collapse near-duplicates by nudging
    for (std::size_t k = 1; k < breaks.size(); ++k)
        if (breaks[k] - breaks[k - 1] < 1e-4)
            breaks[k] = breaks[k - 1] + 1e-4;
    breaks.back() = 1.0;
    return random_weighting_on_grid(rng, std::move(breaks));
}

Weighting random_weighting_on_grid(Rng& rng, std::vector<double> breaks) {
    const std::size_t pieces = breaks.size() - 1;
    const std::size_t inflection =
        static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pieces) - 1));
    std::vector<double> slopes(pieces);
    double level = 0.3 + rng.uniform(0.0, 2.0);
    for (std::size_t l = inflection + 1; l-- > 0;) {
        slopes[l] = level;
        level += rng.uniform(0.0, 0.8); // grows towards the left
    }
    level = slopes[inflection];
    for (std::size_t l = inflection + 1; l < pieces; ++l) {
        level += rng.uniform(0.0, 0.8);
        slopes[l] = level;
    }
    double mass = 0.0;
    for (std::size_t l = 0; l < pieces; ++l)
        mass += slopes[l] * (breaks[l + 1] - breaks[l]);
    for (double& s : slopes) s /= mass;
    return Weighting::from_slopes(std::move(breaks), std::move(slopes),
                                  inflection);
}

ValueFunction random_value_function(Rng& rng, std::size_t pieces, double lo,
                                    double hi) {
    const std::size_t neg = std::max<std::size_t>(1, pieces / 2);
    const std::size_t pos = std::max<std::size_t>(1, pieces - neg);
    std::vector<double> breaks{lo};
    for (std::size_t k = 1; k < neg; ++k) breaks.push_back(rng.uniform(lo * 0.98, -1e-3));
    breaks.push_back(0.0);
    for (std::size_t k = 1; k < pos; ++k) breaks.push_back(rng.uniform(1e-3, hi * 0.98));
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    for (std::size_t k = 1; k < breaks.size(); ++k)
        if (breaks[k] - breaks[k - 1] < 1e-4 && breaks[k] != 0.0)
            breaks[k] = breaks[k - 1] + 1e-4;
    std::sort(breaks.begin(), breaks.end());

    std::size_t zero_idx = 0;
    while (breaks[zero_idx] != 0.0) ++zero_idx;

    std::vector<double> slopes(breaks.size() - 1);
    // convex over losses: slopes increase towards zero from the left
    double level = 0.1 + rng.uniform(0.0, 1.5);
    for (std::size_t j = zero_idx; j-- > 0;) {
        slopes[j] = level;
        level += rng.uniform(0.0, 1.0);
    }
    std::reverse(slopes.begin(), slopes.begin() + static_cast<std::ptrdiff_t>(zero_idx));
    // concave over gains: slopes decrease away from zero
    level = 0.1 + rng.uniform(0.0, 2.0);
    std::vector<double> gains;
    for (std::size_t j = zero_idx; j < slopes.size(); ++j) {
        gains.push_back(level);
        level += rng.uniform(0.0, 1.0);
    }
    std::reverse(gains.begin(), gains.end());
    for (std::size_t j = zero_idx; j < slopes.size(); ++j)
        slopes[j] = gains[j - zero_idx];
    return ValueFunction::from_slopes(std::move(breaks), std::move(slopes));
}

} // namespace prgsr
