#include "prgsr/robust.hpp"

#include <algorithm>
#include <stdexcept>

namespace prgsr {

RobustResult robust_shortfall(const AmbiguityModel& model, const Prospect& prospect,
                  const BisectionConfig& cfg, HMode mode) {
    if (!(cfg.abs_tol > 0.0) || cfg.max_iter < 1)
        throw std::invalid_argument("prgsr: bad bisection config");

    double lo = prospect.min(), hi = prospect.max();
    RobustResult res;

    if (hi - lo > cfg.abs_tol) {
        const double h_lo = h_of_x(model, prospect, lo, mode);
        const double h_hi = h_of_x(model, prospect, hi, mode);
        res.h_evaluations += 2;
        if (h_lo < -1e-7 || h_hi > 1e-7)
            throw std::runtime_error("prgsr: bracket violation, h does not "
                                     "change sign over the support range");
        int it = 0;
        while (hi - lo > cfg.abs_tol) {
            if (++it > cfg.max_iter)
                throw std::runtime_error("prgsr: max_iter exceeded");
            const double mid = 0.5 * (lo + hi);
            const double h_mid = h_of_x(model, prospect, mid, mode);
            ++res.h_evaluations;
            (h_mid <= 0.0 ? hi : lo) = mid;
        }
    }

    const HEvaluation final_eval = evaluate_h(model, prospect, hi, mode);
    ++res.h_evaluations;
    res.rho = hi;
    res.worst_case = final_eval.tuple;
    res.h_at_rho = final_eval.value;
    res.slice_gap = final_eval.slice_gap;
    return res;
}

double worst_gsr_finite(const std::vector<WorstCaseTuple>& tuples,
                        const Prospect& prospect, const BisectionConfig& cfg) {
    if (tuples.empty())
        throw std::invalid_argument("worst_gsr_finite: empty tuple set");
    double worst = -lp::inf;
    for (const WorstCaseTuple& t : tuples)
        worst = std::max(
            worst, gsr_cpt(t.value, t.w_minus, t.w_plus, prospect, cfg).rho);
    return worst;
}

} // namespace prgsr
