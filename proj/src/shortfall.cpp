#include "prgsr/shortfall.hpp"

namespace prgsr {

GsrResult gsr_cpt(const ValueFunction& v, const Weighting& w_minus,
                  const Weighting& w_plus, const Prospect& p,
                  const BisectionConfig& cfg) {
    const double spread = p.max() - p.min();
    if (-v.domain_lo() < spread || v.domain_hi() < spread)
        throw std::domain_error(
            "gsr_cpt: prospect spread exceeds value-function domain");
    return gsr_cpt_fn([&](double y) { return v(y); }, w_minus, w_plus, p, cfg);
}

std::pair<double, double> gsr_translation_check(const ValueFunction& v,
                                                const Weighting& w_minus,
                                                const Weighting& w_plus,
                                                const Prospect& p, double c,
                                                const BisectionConfig& cfg) {
    Prospect shifted = p;
    for (double& xi : shifted.support) xi += c;
    const double rho_shifted = gsr_cpt(v, w_minus, w_plus, shifted, cfg).rho;
    const double rho_base = gsr_cpt(v, w_minus, w_plus, p, cfg).rho;
    return {rho_shifted, rho_base + c};
}

} // namespace prgsr
