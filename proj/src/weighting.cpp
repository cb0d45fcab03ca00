#include "prgsr/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prgsr {

namespace {

void check_unit_grid(const std::vector<double>& t) {
    if (t.size() < 2)
        throw std::invalid_argument("weighting: need at least two breakpoints");
    if (t.front() != 0.0 || t.back() != 1.0)
        throw std::invalid_argument("weighting: breakpoints must span [0,1]");
    for (std::size_t k = 1; k < t.size(); ++k)
        if (!(t[k] > t[k - 1]))
            throw std::invalid_argument("weighting: breakpoints not increasing");
}

} // namespace

Weighting Weighting::from_slopes(std::vector<double> breakpoints,
                                 std::vector<double> slopes,
                                 std::size_t inflection) {
    check_unit_grid(breakpoints);
    if (slopes.size() + 1 != breakpoints.size())
        throw std::invalid_argument("weighting: slope count mismatch");
    if (inflection >= slopes.size())
        throw std::invalid_argument("weighting: inflection index out of range");

    double mass = 0.0;
    for (std::size_t l = 0; l < slopes.size(); ++l) {
        if (!(slopes[l] > 0.0))
            throw std::invalid_argument("weighting: non-positive slope");
        mass += slopes[l] * (breakpoints[l + 1] - breakpoints[l]);
    }
    if (std::abs(mass - 1.0) > 1e-9)
        throw std::invalid_argument("weighting: slopes integrate to " +
                                    std::to_string(mass));
    for (double& s : slopes) s /= mass;

    Weighting w;
    w.breaks_ = std::move(breakpoints);
    w.slopes_ = std::move(slopes);
    w.inflection_ = inflection;
    w.nodes_.assign(w.breaks_.size(), 0.0);
    for (std::size_t l = 0; l < w.slopes_.size(); ++l)
        w.nodes_[l + 1] =
            w.nodes_[l] + w.slopes_[l] * (w.breaks_[l + 1] - w.breaks_[l]);
    w.nodes_.back() = 1.0;
    return w;
}

std::size_t Weighting::piece_index(double p) const {
    if (p < 0.0 || p > 1.0)
        throw std::domain_error("weighting: probability outside [0,1]");
    if (p >= breaks_[breaks_.size() - 2]) return slopes_.size() - 1;
    // first breakpoint strictly greater than p, piece is one to the left
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), p);
    return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

double Weighting::operator()(double p) const {
    if (p < 0.0 || p > 1.0)
        throw std::domain_error("weighting: probability outside [0,1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    const std::size_t l = piece_index(p);
    return nodes_[l] + slopes_[l] * (p - breaks_[l]);
}

Weighting Weighting::refine(const std::vector<double>& points) const {
    // original breakpoints win over inserted points that coincide within
    // 1e-12, so refined pieces never straddle an original breakpoint
    std::vector<double> extra;
    for (double p : points) {
        if (p <= 1e-12 || p >= 1.0 - 1e-12) continue;
        bool duplicate = false;
        for (double t : breaks_)
            if (std::abs(p - t) <= 1e-12) {
                duplicate = true;
                break;
            }
        for (double e : extra)
            if (std::abs(p - e) <= 1e-12) {
                duplicate = true;
                break;
            }
        if (!duplicate) extra.push_back(p);
    }
    std::vector<double> grid = breaks_;
    grid.insert(grid.end(), extra.begin(), extra.end());
    std::sort(grid.begin(), grid.end());

    const double p_star_value = p_star();
    std::vector<double> slopes(grid.size() - 1);
    std::size_t inflection = 0;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        slopes[k] = slopes_[piece_index(0.5 * (grid[k] + grid[k + 1]))];
        if (std::abs(grid[k] - p_star_value) <= 1e-12) inflection = k;
    }
    return from_slopes(std::move(grid), std::move(slopes), inflection);
}

bool Weighting::is_inverse_s(double tol) const {
    for (std::size_t l = 0; l + 1 < slopes_.size(); ++l) {
        if (l + 1 <= inflection_ - 1 && inflection_ >= 1) {
            if (slopes_[l + 1] > slopes_[l] + tol) return false;
        }
        if (l >= inflection_) {
            if (slopes_[l] > slopes_[l + 1] + tol) return false;
        }
    }
    return true;
}

Weighting interpolate_weighting(const std::function<double(double)>& f,
                                const std::vector<double>& breakpoints,
                                bool enforce_inverse_s) {
    check_unit_grid(breakpoints);
    std::vector<double> slopes(breakpoints.size() - 1);
    std::size_t argmin = 0;
    for (std::size_t l = 0; l + 1 < breakpoints.size(); ++l) {
        slopes[l] = (f(breakpoints[l + 1]) - f(breakpoints[l])) /
                    (breakpoints[l + 1] - breakpoints[l]);
        if (!(slopes[l] > 0.0))
            throw std::invalid_argument(
                "interpolate_weighting: f not increasing on the grid");
        if (slopes[l] < slopes[argmin]) argmin = l;
    }
    Weighting w = Weighting::from_slopes(breakpoints, std::move(slopes), argmin);
    if (enforce_inverse_s && !w.is_inverse_s(1e-12))
        throw std::invalid_argument(
            "interpolate_weighting: slopes violate inverse-S monotonicity");
    return w;
}

Weighting identity_weighting(const std::vector<double>& breakpoints) {
    return Weighting::from_slopes(
        breakpoints, std::vector<double>(breakpoints.size() - 1, 1.0), 0);
}

namespace {

// Union grid of two weightings plus the per-piece slope difference.
struct SlopeDiff {
    std::vector<double> grid;
    std::vector<double> diff;
};

SlopeDiff slope_difference(const Weighting& w1, const Weighting& w2) {
    Weighting a = w1.refine(w2.breakpoints());
    Weighting b = w2.refine(w1.breakpoints());
    if (a.breakpoints().size() != b.breakpoints().size())
        throw std::runtime_error("pseudo_metric: grid mismatch after regrid");
    SlopeDiff out;
    out.grid = a.breakpoints();
    out.diff.resize(a.piece_count());
    for (std::size_t l = 0; l < a.piece_count(); ++l)
        out.diff[l] = a.slopes()[l] - b.slopes()[l];
    return out;
}

// Nodes/weights for 16-point Gauss-Legendre on [-1,1].
constexpr double kGlNodes[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeights[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

} // namespace

double gauss_legendre_16(const std::function<double(double)>& g, double a,
                         double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double total = 0.0;
    for (int k = 0; k < 8; ++k)
        total += kGlWeights[k] *
                 (g(mid - half * kGlNodes[k]) + g(mid + half * kGlNodes[k]));
    return half * total;
}

double pseudo_metric_l1(const Weighting& w1, const Weighting& w2) {
    const SlopeDiff d = slope_difference(w1, w2);
    double total = 0.0;
    for (std::size_t l = 0; l < d.diff.size(); ++l)
        total += std::abs(d.diff[l]) * (d.grid[l + 1] - d.grid[l]);
    return total;
}

double pseudo_metric_general(const Weighting& w1, const Weighting& w2,
                             const std::function<double(double)>& gtilde) {
    if (!gtilde) return pseudo_metric_l1(w1, w2);
    const SlopeDiff d = slope_difference(w1, w2);
    double total = 0.0;
    for (std::size_t l = 0; l < d.diff.size(); ++l) {
        const double gint = gauss_legendre_16(gtilde, d.grid[l], d.grid[l + 1]);
        if (!std::isfinite(gint) || gint < -1e-12)
            throw std::invalid_argument(
                "pseudo_metric_general: gtilde not integrable/non-negative");
        total += std::abs(d.diff[l]) * gint;
    }
    return total;
}

} // namespace prgsr
