#include "prgsr/experiment.hpp"

#include "prgsr/json_io.hpp"
#include "prgsr/reference_functions.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace prgsr {

namespace {

Prospect default_prospect() {
    return make_prospect({0.4074, 0.4529, 0.0635, 0.4567, 0.3162, 0.0488,
                          0.1392, 0.2734, 0.4788, 0.4824},
                         std::vector<double>(10, 0.1));
}

SweepPoint measure_point(const std::string& sweep, double parameter,
                         std::size_t replication, const Session& session,
                         AmbiguityModel model, const Prospect& prospect,
                         const BisectionConfig& cfg) {
    const RobustResult res = robust_shortfall(model, prospect, cfg);
    SweepPoint pt;
    pt.sweep = sweep;
    pt.parameter = parameter;
    pt.replication = replication;
    pt.rho = res.rho;
    pt.worst_case = res.worst_case;

    double sup = 0.0;
    for (double xi : prospect.support) {
        const double y = xi - res.rho;
        sup = std::max(sup, std::abs(pt.worst_case.value(y) -
                                     session.dm().value(y)));
    }
    pt.value_sup_dist = sup;
    const Weighting& truth = model.ball_minus.center; // discretized truth
    pt.w_minus_dist = pseudo_metric_l1(pt.worst_case.w_minus, truth);
    pt.w_plus_dist = pseudo_metric_l1(pt.worst_case.w_plus, truth);
    return pt;
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.m_sweep.empty() || cfg.k_sweep.empty() || cfg.r_sweep.empty())
        throw std::invalid_argument("experiment: sweeps must be non-empty");

    ExperimentReport report;
    report.config = cfg;
    const Prospect prospect =
        cfg.prospect.support.empty() ? default_prospect() : cfg.prospect;

    std::size_t max_m = cfg.fixed_m, max_k = cfg.fixed_k;
    for (std::size_t m : cfg.m_sweep) max_m = std::max(max_m, m);
    for (std::size_t k : cfg.k_sweep) max_k = std::max(max_k, k);

    for (std::size_t rep = 0; rep < cfg.replications; ++rep) {
        ElicitationConfig ecfg;
        ecfg.weighting_grid = cfg.weighting_grid;
        ecfg.ball_radius = cfg.radius;
        Session session(cfg.seed + rep, ecfg);
        for (std::size_t k = 0; k < max_m; ++k) session.next_pairwise_question();
        for (std::size_t k = 0; k < max_k; ++k) session.next_ce_question();

        for (std::size_t m : cfg.m_sweep)
            report.points.push_back(measure_point(
                "m", static_cast<double>(m), rep, session,
                session.model(m, cfg.fixed_k), prospect, cfg.bisection));
        for (std::size_t k : cfg.k_sweep)
            report.points.push_back(measure_point(
                "k", static_cast<double>(k), rep, session,
                session.model(cfg.fixed_m, k), prospect, cfg.bisection));
        for (double r : cfg.r_sweep) {
            AmbiguityModel model = session.model(cfg.fixed_m, cfg.fixed_k);
            model.ball_minus.radius = r;
            model.ball_plus.radius = r;
            report.points.push_back(measure_point("r", r, rep, session, model,
                                                  prospect, cfg.bisection));
        }
    }
    return report;
}

void emit_outputs(const ExperimentReport& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    for (const std::string sweep : {"m", "k", "r"}) {
        const fs::path csv_path = fs::path(out_dir) / (sweep + "_sweep.csv");
        std::FILE* f = std::fopen(csv_path.c_str(), "w");
        if (!f) throw std::runtime_error("emit_outputs: cannot open " +
                                         csv_path.string());
        std::fprintf(f, "sweep,parameter,replication,rho,value_sup_dist,"
                        "w_minus_dist,w_plus_dist\n");
        for (const SweepPoint& pt : report.points) {
            if (pt.sweep != sweep) continue;
            std::fprintf(f, "%s,%.17g,%zu,%.17g,%.17g,%.17g,%.17g\n",
                         pt.sweep.c_str(), pt.parameter, pt.replication,
                         pt.rho, pt.value_sup_dist, pt.w_minus_dist,
                         pt.w_plus_dist);
        }
        std::fclose(f);
    }

    for (const SweepPoint& pt : report.points) {
        char name[96];
        std::snprintf(name, sizeof name, "worst_%s_%g_rep%zu.json",
                      pt.sweep.c_str(), pt.parameter, pt.replication);
        std::ofstream out(fs::path(out_dir) / name);
        out << to_json(pt.worst_case).dump(2) << '\n';
    }
}

} // namespace prgsr
