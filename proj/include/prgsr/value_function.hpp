#pragma once

#include <functional>
#include <vector>

namespace prgsr {

/// Piecewise-linear S-shaped value function on [alpha, beta] with a
/// breakpoint at zero and v(0) = 0.  Convex over the losses, concave over
/// the gains, strictly increasing.  Piece membership follows the convention
/// [y_1, y_2] for the first piece and (y_j, y_{j+1}] afterwards; continuity
/// makes the choice value-irrelevant but keeps evaluation and LP coefficients
/// bit-identical.
class ValueFunction {
  public:
    /// Lower bound standing in for the strict inequalities a_j > 0: linear
    /// programs cannot express strictness, and the floor keeps the
    /// worst-case extraction quotient well-posed.
    static constexpr double slope_floor = 1e-7;

    /// Builds the function from breakpoints and piece slopes; intercepts are
    /// derived from v(0) = 0 so continuity holds exactly.  Requires strictly
    /// increasing breakpoints containing 0 with at least one point on each
    /// side, and positive slopes.  S-shape is checked with `shape_tol` slack
    /// (pass a negative value to skip, e.g. for worst-case extractions that
    /// carry LP round-off).
    static ValueFunction from_slopes(std::vector<double> breakpoints,
                                     std::vector<double> slopes,
                                     double shape_tol = 1e-9);

    /// Interpolates an increasing S-shaped f with f(0)=0 at the breakpoints.
    static ValueFunction interpolate(const std::function<double(double)>& f,
                                     const std::vector<double>& breakpoints,
                                     double shape_tol = 1e-9);

    double operator()(double y) const; // throws outside [alpha, beta]

    std::size_t piece_count() const { return slopes_.size(); }
    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& slopes() const { return slopes_; }
    const std::vector<double>& intercepts() const { return intercepts_; }
    std::size_t zero_index() const { return zero_index_; }

    double domain_lo() const { return breaks_.front(); }
    double domain_hi() const { return breaks_.back(); }
    double left_value() const; // v(alpha)
    double right_value() const; // v(beta)

    std::size_t piece_index(double y) const;

    /// Largest violation of the S-shape slope orderings (0 when exactly
    /// S-shaped).
    double shape_violation() const;

    /// Empty placeholder; assign a built instance before use.
    ValueFunction() = default;

  private:
    std::vector<double> breaks_;
    std::vector<double> slopes_;
    std::vector<double> intercepts_;
    std::size_t zero_index_ = 0;
};

} // namespace prgsr
