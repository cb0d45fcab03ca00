#include "prgsr/prospect.hpp"

#include "prgsr/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace prgsr {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
  public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace

double DistortionWeights::sum() const {
    CompensatedSum s;
    for (double w : weights) s.add(w);
    return s.value();
}

Prospect make_prospect(const std::vector<double>& outcomes,
                      const std::vector<double>& probs) {
    if (outcomes.size() != probs.size())
        throw std::invalid_argument("make_prospect: length mismatch");
    if (outcomes.empty())
        throw std::invalid_argument("make_prospect: empty support");
    double psum = 0.0;
    for (double p : probs) {
        if (!(p > 0.0))
            throw std::invalid_argument("make_prospect: non-positive probability");
        psum += p;
    }
    if (std::abs(psum - 1.0) > 1e-9)
        throw std::invalid_argument("make_prospect: probabilities sum to " +
                                    std::to_string(psum));

    std::vector<std::size_t> order(outcomes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return outcomes[a] < outcomes[b];
    });

    Prospect result;
    for (std::size_t k : order) {
        if (!result.support.empty() && outcomes[k] == result.support.back()) {
            result.probs.back() += probs[k];
        } else {
            result.support.push_back(outcomes[k]);
            result.probs.push_back(probs[k]);
        }
    }
    for (double& p : result.probs) p /= psum;
    return result;
}

SignSplit sign_split(const Prospect& p, double x) {
    SignSplit split;
    split.shifted.reserve(p.size());
    for (double xi : p.support) split.shifted.push_back(xi - x);
    split.loss_count = static_cast<std::size_t>(
        std::count_if(split.shifted.begin(), split.shifted.end(),
                      [](double s) { return s < 0.0; }));
    split.gain_count = split.shifted.size() - split.loss_count;
    return split;
}

DistortionWeights distortion_weights(const SignSplit& split,
                                     const std::vector<double>& probs,
                                     const Weighting& w_minus,
                                     const Weighting& w_plus) {
    const std::size_t n = probs.size();
    if (split.shifted.size() != n)
        throw std::invalid_argument("distortion_weights: size mismatch");
    const std::size_t m = split.loss_count;

    DistortionWeights out;
    out.loss_count = m;
    out.weights.assign(n, 0.0);

    // Loss block: differences of the loss weighting at lower-tail cumulative
    // probabilities, accumulated left to right.
    CompensatedSum lower;
    double prev = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        lower.add(probs[k]);
        const double q = std::min(lower.value(), 1.0);
        out.weights[k] = w_minus(q) - w_minus(prev);
        prev = q;
    }

    // Gain block: differences of the gain weighting at upper tails,
    // accumulated right to left.
    CompensatedSum upper;
    prev = 0.0;
    for (std::size_t k = n; k-- > m;) {
        upper.add(probs[k]);
        const double q = std::min(upper.value(), 1.0);
        out.weights[k] = w_plus(q) - w_plus(prev);
        prev = q;
    }
    return out;
}

} // namespace prgsr
