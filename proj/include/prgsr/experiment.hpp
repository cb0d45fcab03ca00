#pragma once

#include "prgsr/elicitation.hpp"
#include "prgsr/robust.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace prgsr {

/// Convergence-study configuration.  Defaults reproduce the benchmark setup:
/// the ten-point prospect, tenth weighting grid, pairwise sweep at K = 5,
/// certainty-equivalent sweep at M = 5, and a radius sweep at M = K = 5
/// shrinking the ball to a singleton.
struct ExperimentConfig {
    std::uint64_t seed = 1;
    std::size_t replications = 1;
    Prospect prospect; // empty => benchmark ten-point support
    std::vector<double> weighting_grid; // empty => 0, 0.1, ..., 1
    std::vector<std::size_t> m_sweep{5, 20, 40, 60, 80, 100};
    std::vector<std::size_t> k_sweep{5, 20, 40, 60, 80, 100};
    std::vector<double> r_sweep{0.16, 0.08, 0.04, 0.02, 0.01, 0.0};
    std::size_t fixed_m = 5;
    std::size_t fixed_k = 5;
    double radius = 0.01;
    BisectionConfig bisection{1e-6, 200};
};

struct SweepPoint {
    std::string sweep; // "m", "k" or "r"
    double parameter = 0.0;
    std::size_t replication = 0;
    double rho = 0.0;
    /// sup distance of the worst-case value function to the true one at the
    /// shifted support points used by the risk functional
    double value_sup_dist = 0.0;
    double w_minus_dist = 0.0; // L1 pseudo-metric to the discretized truth
    double w_plus_dist = 0.0;
    WorstCaseTuple worst_case;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<SweepPoint> points;
};

/// Runs the three sweeps on nested questionnaires: each replication draws
/// one session per seed and sweep points reuse prefixes of its records, so
/// the ambiguity sets only shrink along a sweep and the monotone trends are
/// exact rather than distributional.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// One CSV per sweep (m_sweep.csv, k_sweep.csv, r_sweep.csv; fixed column
/// order sweep,parameter,replication,rho,value_sup_dist,w_minus_dist,
/// w_plus_dist) plus one worst-case tuple JSON per point.  Deterministic
/// byte-for-byte given the config.
void emit_outputs(const ExperimentReport& report, const std::string& out_dir);

} // namespace prgsr
