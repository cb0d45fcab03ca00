#pragma once

#include <functional>
#include <vector>

namespace prgsr {

/// Piecewise-linear probability weighting function on [0,1] with w(0)=0 and
/// w(1)=1, represented by its breakpoints and the constant slope of each
/// linear piece.  Inverse-S shape means the slopes decrease up to the
/// inflection piece and increase afterwards.
class Weighting {
  public:
    /// Builds a weighting from breakpoints 0 = t_0 < ... < t_T = 1 and piece
    /// slopes.  The slopes are rescaled so the pieces integrate exactly to
    /// one; a deviation larger than 1e-9 is an error.  `inflection` is the
    /// 0-based index of the piece whose left endpoint is p*.
    static Weighting from_slopes(std::vector<double> breakpoints,
                                 std::vector<double> slopes,
                                 std::size_t inflection);

    double operator()(double p) const;

    std::size_t piece_count() const { return slopes_.size(); }
    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& slopes() const { return slopes_; }
    const std::vector<double>& node_values() const { return nodes_; }
    std::size_t inflection() const { return inflection_; }
    double p_star() const { return breaks_[inflection_]; }

    /// 0-based index of the piece [t_l, t_{l+1}) containing p.
    std::size_t piece_index(double p) const;

    /// Identical function on the union of the current grid and `points`
    /// (points outside (0,1) or duplicating existing breakpoints are
    /// ignored).  Exact: slopes are constant on refined sub-intervals.
    Weighting refine(const std::vector<double>& points) const;

    /// True when the slopes satisfy the inverse-S chains for the stored
    /// inflection index, with slack `tol`.
    bool is_inverse_s(double tol = 0.0) const;

    /// Empty placeholder; assign a built instance before use.
    Weighting() = default;

  private:
    std::vector<double> breaks_;
    std::vector<double> slopes_;
    std::vector<double> nodes_; // cumulative values at breakpoints
    std::size_t inflection_ = 0;
};

/// Piecewise-linear interpolation of an increasing f with f(0)=0, f(1)=1 at
/// the given breakpoints.  The inflection index is placed at the piece with
/// the smallest slope.  With `enforce_inverse_s` the slopes must satisfy the
/// inverse-S chains; disable it when constructing nominal weightings whose
/// grid is too coarse for the shape to survive interpolation.
Weighting interpolate_weighting(const std::function<double(double)>& f,
                                const std::vector<double>& breakpoints,
                                bool enforce_inverse_s = true);

Weighting identity_weighting(const std::vector<double>& breakpoints);

/// integral of |psi1 - psi2| over [0,1] (the two weightings are refined onto
/// their union grid first).
double pseudo_metric_l1(const Weighting& w1, const Weighting& w2);

/// sup over |g| <= gtilde of |integral g (psi1 - psi2)|; the supremum is
/// attained piecewise by g = gtilde * sign(psi1 - psi2), giving
/// sum_l |psi1_l - psi2_l| * integral of gtilde over the piece.  A null
/// gtilde means gtilde == 1 and uses the closed form; otherwise the piece
/// integrals use 16-point Gauss-Legendre.
double pseudo_metric_general(const Weighting& w1, const Weighting& w2,
                             const std::function<double(double)>& gtilde);

/// 16-point Gauss-Legendre approximation of the integral of g over [a,b].
double gauss_legendre_16(const std::function<double(double)>& g, double a,
                         double b);

} // namespace prgsr
