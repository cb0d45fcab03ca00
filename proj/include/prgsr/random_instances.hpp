#pragma once

#include "prgsr/prospect.hpp"
#include "prgsr/value_function.hpp"
#include "prgsr/weighting.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace prgsr {

/// Deterministic uniform draws on top of mt19937_64.  The raw 53-bit mapping
/// keeps streams identical across standard libraries, which the
/// reproducibility contract relies on.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(uniform() * static_cast<double>(hi - lo + 1));
    }
    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

/// Random prospect with n distinct outcomes in [lo, hi] and positive
/// probabilities summing to one.
Prospect random_prospect(Rng& rng, std::size_t n, double lo, double hi);

/// Random inverse-S weighting with `pieces` pieces on a random grid.
Weighting random_weighting(Rng& rng, std::size_t pieces);

/// Random inverse-S weighting on the given breakpoint grid.
Weighting random_weighting_on_grid(Rng& rng, std::vector<double> breakpoints);

/// Random S-shaped value function on [lo, hi] with roughly `pieces` pieces
/// and a breakpoint at zero.
ValueFunction random_value_function(Rng& rng, std::size_t pieces, double lo,
                                    double hi);

} // namespace prgsr
