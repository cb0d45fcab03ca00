#pragma once

#include <cstddef>
#include <vector>

namespace prgsr {

/// Finitely supported random prospect: strictly increasing support with
/// positive probabilities summing to one.
struct Prospect {
    std::vector<double> support;
    std::vector<double> probs;

    std::size_t size() const { return support.size(); }
    double min() const { return support.front(); }
    double max() const { return support.back(); }
};

/// Support of a prospect shifted by x and partitioned at zero.  The first
/// `loss_count` entries of `shifted` are strictly negative, the rest are >= 0
/// (an outcome equal to the shift lands in the non-negative block).
struct SignSplit {
    std::size_t loss_count = 0; // m
    std::size_t gain_count = 0; // n + 1
    std::vector<double> shifted;
};

/// Rank-dependent probability weights pi applied to the sorted shifted
/// outcomes.  Entry k corresponds to shifted outcome k; the first
/// `loss_count` weights come from the loss-side weighting, the rest from the
/// gain side.
struct DistortionWeights {
    std::size_t loss_count = 0;
    std::vector<double> weights;

    double sum() const;
};

class Weighting;

/// Canonicalizing constructor: sorts and merges raw (outcome, probability)
/// data into a valid Prospect.  Duplicate outcomes are merged by summing their probabilities and the
/// probabilities are renormalized to sum to one exactly.
/// Throws std::invalid_argument on length mismatch, non-positive
/// probabilities, or a probability sum off by more than 1e-9.
Prospect make_prospect(const std::vector<double>& outcomes,
                      const std::vector<double>& probs);

SignSplit sign_split(const Prospect& p, double x);

/// Cumulative-difference weights of the distorted expectation: the loss-side
/// weighting is applied to lower-tail cumulative probabilities, the gain-side
/// weighting to upper tails.  Cumulative sums use compensated summation.
DistortionWeights distortion_weights(const SignSplit& split,
                                     const std::vector<double>& probs,
                                     const Weighting& w_minus,
                                     const Weighting& w_plus);

} // namespace prgsr
