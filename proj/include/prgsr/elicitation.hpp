#pragma once

#include "prgsr/ambiguity.hpp"
#include "prgsr/random_instances.hpp"

#include <cstdint>
#include <vector>

namespace prgsr {

/// Closed-form decision maker used to answer the generated questionnaires.
struct SimulatedDm {
    double gamma = 0.6;

    double value(double x) const;
    double weighting(double p) const;
    double invert_weighting(double target) const;
};

/// Shortfall root of the two-point prospect {payoff w.p. win_prob, 0}: the x
/// in (0, payoff) solving
///   (payoff - x)^(1/3) w - 1.5 x^0.2 (1 - w) = 0,  w = dm.weighting(win_prob).
double ce_truth_root(const SimulatedDm& dm, double payoff, double win_prob);

struct ElicitationConfig {
    double domain_lo = -0.5;
    double domain_hi = 0.5;
    std::vector<double> weighting_grid; // empty => 0, 0.1, ..., 1
    double ball_radius = 0.01;
    double tau_max = 0.05;
};

struct SplitInterval {
    double i1 = 0.0;
    double i2 = 1.0;
};

/// Adaptive questionnaire session against the simulated DM.  Pairwise
/// questions follow the utility-split design: probe a random triple, bound
/// the normalized value at the midpoint over all functions consistent with
/// the prior answers (two small LPs), pick the lottery probability that
/// bisects the bound interval, and record the DM's answer.  Deterministic
/// given the seed.
class Session {
  public:
    explicit Session(std::uint64_t seed, ElicitationConfig cfg = {});

    PairwiseRecord next_pairwise_question();
    CertaintyEquivalentRecord next_ce_question();

    /// Min/max of (v(r2) - v(lo)) / (v(hi) - v(lo)) over piecewise-linear
    /// S-shaped value functions with the domain anchors that satisfy every
    /// pairwise answer recorded so far.
    SplitInterval split_interval(double r1, double r2, double r3) const;

    const std::vector<PairwiseRecord>& pairwise() const { return pairwise_; }
    const std::vector<CertaintyEquivalentRecord>& ce() const { return ce_; }
    const SimulatedDm& dm() const { return dm_; }
    const ElicitationConfig& config() const { return cfg_; }

    /// Ambiguity model from the first n_pairwise/n_ce records, weighting
    /// balls of the configured radius centered at the discretized truth.
    AmbiguityModel model(std::size_t n_pairwise, std::size_t n_ce) const;
    AmbiguityModel model() const;

  private:
    std::vector<double> session_grid(double r1, double r2, double r3) const;

    SimulatedDm dm_;
    ElicitationConfig cfg_;
    Rng rng_;
    Weighting truth_weighting_; // discretized on the configured grid
    std::vector<PairwiseRecord> pairwise_;
    std::vector<CertaintyEquivalentRecord> ce_;
};

} // namespace prgsr
