#include "prgsr/value_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prgsr {

namespace {

std::size_t find_zero_index(const std::vector<double>& y) {
    for (std::size_t k = 0; k < y.size(); ++k)
        if (y[k] == 0.0) return k;
    throw std::invalid_argument("value function: no breakpoint at 0");
}

} // namespace

ValueFunction ValueFunction::from_slopes(std::vector<double> breakpoints,
                                         std::vector<double> slopes,
                                         double shape_tol) {
    if (breakpoints.size() < 3)
        throw std::invalid_argument(
            "value function: need a breakpoint on each side of 0");
    if (slopes.size() + 1 != breakpoints.size())
        throw std::invalid_argument("value function: slope count mismatch");
    for (std::size_t k = 1; k < breakpoints.size(); ++k)
        if (!(breakpoints[k] > breakpoints[k - 1]))
            throw std::invalid_argument(
                "value function: breakpoints not strictly increasing");
    for (double a : slopes)
        if (!(a > 0.0))
            throw std::invalid_argument("value function: non-positive slope");

    ValueFunction v;
    v.zero_index_ = find_zero_index(breakpoints);
    if (v.zero_index_ == 0 || v.zero_index_ + 1 == breakpoints.size())
        throw std::invalid_argument("value function: 0 must be interior");
    v.breaks_ = std::move(breakpoints);
    v.slopes_ = std::move(slopes);

    // Intercepts from v(0)=0: node values by cumulative sums away from zero,
    // then b_j = v(y_j) - a_j y_j on each piece.
    std::vector<double> nodes(v.breaks_.size(), 0.0);
    for (std::size_t k = v.zero_index_; k + 1 < v.breaks_.size(); ++k)
        nodes[k + 1] = nodes[k] + v.slopes_[k] * (v.breaks_[k + 1] - v.breaks_[k]);
    for (std::size_t k = v.zero_index_; k-- > 0;)
        nodes[k] = nodes[k + 1] - v.slopes_[k] * (v.breaks_[k + 1] - v.breaks_[k]);
    v.intercepts_.resize(v.slopes_.size());
    for (std::size_t j = 0; j < v.slopes_.size(); ++j)
        v.intercepts_[j] = nodes[j] - v.slopes_[j] * v.breaks_[j];

    if (shape_tol >= 0.0 && v.shape_violation() > shape_tol)
        throw std::invalid_argument("value function: slopes are not S-shaped");
    return v;
}

ValueFunction ValueFunction::interpolate(const std::function<double(double)>& f,
                                         const std::vector<double>& breakpoints,
                                         double shape_tol) {
    std::vector<double> slopes(breakpoints.size() - 1);
    for (std::size_t j = 0; j + 1 < breakpoints.size(); ++j)
        slopes[j] = (f(breakpoints[j + 1]) - f(breakpoints[j])) /
                    (breakpoints[j + 1] - breakpoints[j]);
    return from_slopes(breakpoints, std::move(slopes), shape_tol);
}

std::size_t ValueFunction::piece_index(double y) const {
    if (y < breaks_.front() || y > breaks_.back())
        throw std::domain_error("value function: argument outside domain");
    if (y <= breaks_[1]) return 0;
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), y);
    // y lies in (breaks[k-1], breaks[k]] where k = it - begin
    return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

double ValueFunction::operator()(double y) const {
    const std::size_t j = piece_index(y);
    return slopes_[j] * y + intercepts_[j];
}

double ValueFunction::left_value() const {
    return slopes_.front() * breaks_.front() + intercepts_.front();
}

double ValueFunction::right_value() const {
    return slopes_.back() * breaks_.back() + intercepts_.back();
}

double ValueFunction::shape_violation() const {
    // Convex over losses (pieces before zero_index_), concave over gains;
    // the pair straddling zero is unconstrained.
    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < slopes_.size(); ++j) {
        if (j + 1 <= zero_index_ - 1)
            worst = std::max(worst, slopes_[j] - slopes_[j + 1]);
        else if (j >= zero_index_)
            worst = std::max(worst, slopes_[j + 1] - slopes_[j]);
    }
    return worst;
}

} // namespace prgsr
