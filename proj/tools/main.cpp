#include "prgsr/elicitation.hpp"
#include "prgsr/experiment.hpp"
#include "prgsr/json_io.hpp"
#include "prgsr/oracle.hpp"
#include "prgsr/robust.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_output(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream out(out_path);
        out << j.dump(2) << '\n';
    }
}

int run_gsr(const std::string& value_path, const std::string& w_minus_path,
            const std::string& w_plus_path, const std::string& prospect_path,
            double tol, const std::string& out_path) {
    const prgsr::ValueFunction v =
        prgsr::value_function_from_json(load_json(value_path));
    const prgsr::Weighting wm =
        prgsr::weighting_from_json(load_json(w_minus_path));
    const prgsr::Weighting wp =
        w_plus_path.empty() ? wm
                            : prgsr::weighting_from_json(load_json(w_plus_path));
    const prgsr::Prospect p =
        prgsr::prospect_from_json(load_json(prospect_path));
    const prgsr::GsrResult r = prgsr::gsr_cpt(v, wm, wp, p, {tol, 200});
    write_output(json{{"rho", r.rho}, {"iterations", r.iterations}}, out_path);
    return 0;
}

int run_prgsr(const std::string& model_path, const std::string& prospect_path,
              double tol, int h_curve_points, const std::string& out_path) {
    const prgsr::AmbiguityModel model =
        prgsr::model_from_json(load_json(model_path));
    const prgsr::Prospect p =
        prgsr::prospect_from_json(load_json(prospect_path));
    const prgsr::RobustResult r = prgsr::robust_shortfall(model, p, {tol, 200});
    json out{{"rho", r.rho},
             {"worst_case", prgsr::to_json(r.worst_case)},
             {"h_at_rho", r.h_at_rho},
             {"slice_gap", r.slice_gap}};
    if (h_curve_points > 1) {
        json curve = json::array();
        for (int k = 0; k < h_curve_points; ++k) {
            const double x = p.min() + (p.max() - p.min()) * k /
                                           (h_curve_points - 1.0);
            curve.push_back({x, prgsr::h_of_x(model, p, x)});
        }
        out["h_curve"] = curve;
    }
    write_output(out, out_path);
    return 0;
}

int run_elicit(std::size_t n_pairwise, std::size_t n_ce, std::uint64_t seed,
               double radius, const std::string& out_path) {
    prgsr::ElicitationConfig cfg;
    cfg.ball_radius = radius;
    prgsr::Session session(seed, cfg);
    json pairwise = json::array(), ce = json::array();
    for (std::size_t k = 0; k < n_pairwise; ++k)
        pairwise.push_back(prgsr::to_json(session.next_pairwise_question()));
    for (std::size_t k = 0; k < n_ce; ++k)
        ce.push_back(prgsr::to_json(session.next_ce_question()));
    write_output(json{{"seed", seed},
                      {"pairwise", pairwise},
                      {"ce", ce},
                      {"model", prgsr::to_json(session.model())}},
                 out_path);
    return 0;
}

int run_experiment_cmd(const std::string& config_path, std::uint64_t seed,
                       bool seed_given, const std::string& out_dir) {
    prgsr::ExperimentConfig cfg;
    if (!config_path.empty()) {
        const json j = load_json(config_path);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.replications = j.value("replications", cfg.replications);
        if (j.contains("prospect"))
            cfg.prospect = prgsr::prospect_from_json(j.at("prospect"));
        if (j.contains("weighting_grid"))
            cfg.weighting_grid =
                j.at("weighting_grid").get<std::vector<double>>();
        if (j.contains("m_sweep"))
            cfg.m_sweep = j.at("m_sweep").get<std::vector<std::size_t>>();
        if (j.contains("k_sweep"))
            cfg.k_sweep = j.at("k_sweep").get<std::vector<std::size_t>>();
        if (j.contains("r_sweep"))
            cfg.r_sweep = j.at("r_sweep").get<std::vector<double>>();
        cfg.fixed_m = j.value("fixed_m", cfg.fixed_m);
        cfg.fixed_k = j.value("fixed_k", cfg.fixed_k);
        cfg.radius = j.value("radius", cfg.radius);
        cfg.bisection.abs_tol = j.value("abs_tol", cfg.bisection.abs_tol);
    }
    if (seed_given) cfg.seed = seed;
    const prgsr::ExperimentReport report = prgsr::run_experiment(cfg);
    prgsr::emit_outputs(report, out_dir);
    std::printf("wrote %zu sweep points to %s\n", report.points.size(),
                out_dir.c_str());
    return 0;
}

int run_verify(std::uint64_t seed, int instances, const std::string& out_path) {
    prgsr::Rng rng(seed);
    std::ostringstream log;
    bool all_ok = true;

    // sandwich of the linearized program between the enumeration bounds
    double worst_lo = 0.0, worst_hi = 0.0, worst_gap = 0.0;
    int infeasible = 0;
    for (int k = 0; k < instances; ++k) {
        const prgsr::TinyInstance inst = prgsr::make_tiny_instance(rng);
        const double x = rng.uniform(inst.prospect.min(), inst.prospect.max());
        const prgsr::HEvaluation ev = prgsr::evaluate_h(
            inst.model, inst.prospect, x, prgsr::HMode::monolithic);
        const prgsr::OracleResult res =
            prgsr::oracle_h(inst.model, inst.prospect, x, 9, 9);
        if (!res.feasible) {
            ++infeasible;
            continue;
        }
        const double lo_viol = (res.value - res.bound) - ev.value;
        const double hi_viol =
            ev.value - (res.value + std::max(ev.slice_gap, 0.0) + res.bound);
        worst_lo = std::max(worst_lo, lo_viol);
        worst_hi = std::max(worst_hi, hi_viol);
        worst_gap = std::max(worst_gap, ev.slice_gap);
        if (lo_viol > 1e-6 || hi_viol > 1e-6) all_ok = false;
    }
    log << (all_ok ? "[PASS]" : "[FAIL]")
        << " oracle sandwich: worst lower violation " << worst_lo
        << ", worst upper violation " << worst_hi << ", max slice gap "
        << worst_gap << ", infeasible-at-resolution " << infeasible << "/"
        << instances << "\n";

    // robust-definition equivalence on random finite tuple sets
    double worst_equiv = 0.0;
    const prgsr::BisectionConfig cfg;
    for (int k = 0; k < instances; ++k) {
        const prgsr::Prospect p = prgsr::random_prospect(
            rng, 1 + static_cast<std::size_t>(rng.uniform_int(0, 6)), -0.4,
            0.4);
        std::vector<prgsr::WorstCaseTuple> tuples;
        const std::size_t count =
            1 + static_cast<std::size_t>(rng.uniform_int(0, 4));
        for (std::size_t j = 0; j < count; ++j)
            tuples.push_back({prgsr::random_value_function(rng, 5, -2.0, 2.0),
                              prgsr::random_weighting(rng, 4),
                              prgsr::random_weighting(rng, 3)});
        const auto [max_rho, root] =
            prgsr::oracle_robust_equivalence(tuples, p, cfg);
        worst_equiv = std::max(worst_equiv, std::abs(max_rho - root));
    }
    const bool equiv_ok = worst_equiv <= 2.0 * cfg.abs_tol;
    all_ok = all_ok && equiv_ok;
    log << (equiv_ok ? "[PASS]" : "[FAIL]")
        << " robust-definition equivalence: max |difference| " << worst_equiv
        << "\n";

    // grid oracle agreement with the bisection solver
    double worst_grid = 0.0;
    for (int k = 0; k < instances; ++k) {
        const prgsr::ValueFunction v =
            prgsr::random_value_function(rng, 4, -4.0, 4.0);
        const prgsr::Weighting wm = prgsr::random_weighting(rng, 3);
        const prgsr::Weighting wp = prgsr::random_weighting(rng, 4);
        const prgsr::Prospect p = prgsr::random_prospect(rng, 5, -1.0, 1.0);
        const double via_grid = prgsr::oracle_gsr_grid(v, wm, wp, p, 400);
        const double via_bisect = prgsr::gsr_cpt(v, wm, wp, p, cfg).rho;
        const double slack = (p.max() - p.min()) / 400.0 + cfg.abs_tol;
        worst_grid =
            std::max(worst_grid, std::abs(via_grid - via_bisect) - slack);
    }
    const bool grid_ok = worst_grid <= 0.0;
    all_ok = all_ok && grid_ok;
    log << (grid_ok ? "[PASS]" : "[FAIL]")
        << " shortfall grid oracle: worst slack excess "
        << std::max(0.0, worst_grid) << "\n";

    std::cout << log.str();
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << log.str();
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"preference-robust shortfall risk toolkit"};
    app.require_subcommand(1);

    std::string value_path, w_minus_path, w_plus_path, prospect_path;
    std::string model_path, config_path, out_path, out_dir = "out";
    double tol = 1e-8, radius = 0.01;
    int h_curve_points = 0, instances = 50;
    std::size_t n_pairwise = 5, n_ce = 5;
    std::uint64_t seed = 1;

    CLI::App* gsr = app.add_subcommand("gsr", "single-tuple shortfall risk");
    gsr->add_option("--value", value_path, "value function json")->required();
    gsr->add_option("--w-minus", w_minus_path, "loss-side weighting json")
        ->required();
    gsr->add_option("--w-plus", w_plus_path,
                    "gain-side weighting json (defaults to --w-minus)");
    gsr->add_option("--prospect", prospect_path, "prospect json")->required();
    gsr->add_option("--tol", tol, "bisection tolerance");
    gsr->add_option("--out", out_path, "output json path (stdout if absent)");

    CLI::App* robust =
        app.add_subcommand("prgsr", "preference-robust shortfall risk");
    robust->add_option("--model", model_path, "ambiguity model json")
        ->required();
    robust->add_option("--prospect", prospect_path, "prospect json")
        ->required();
    robust->add_option("--tol", tol, "bisection tolerance");
    robust->add_option("--h-curve", h_curve_points,
                       "also sample h at this many shifts");
    robust->add_option("--out", out_path, "output json path");

    CLI::App* elicit = app.add_subcommand(
        "elicit", "simulate an adaptive questionnaire session");
    elicit->add_option("--pairwise", n_pairwise, "pairwise question count");
    elicit->add_option("--ce", n_ce, "certainty-equivalent question count");
    elicit->add_option("--seed", seed, "session seed");
    elicit->add_option("--radius", radius, "weighting-ball radius");
    elicit->add_option("--out", out_path, "transcript json path");

    CLI::App* experiment = app.add_subcommand(
        "experiment", "run the convergence sweeps and emit plot data");
    experiment->add_option("--config", config_path, "experiment config json");
    CLI::Option* seed_opt =
        experiment->add_option("--seed", seed, "seed override");
    experiment->add_option("--out", out_dir, "output directory");

    CLI::App* verify =
        app.add_subcommand("verify", "run the brute-force oracle suite");
    verify->add_option("--seed", seed, "oracle seed");
    verify->add_option("--instances", instances, "instances per check");
    verify->add_option("--out", out_path, "report path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gsr->parsed())
            return run_gsr(value_path, w_minus_path, w_plus_path,
                           prospect_path, tol, out_path);
        if (robust->parsed())
            return run_prgsr(model_path, prospect_path, tol, h_curve_points,
                             out_path);
        if (elicit->parsed())
            return run_elicit(n_pairwise, n_ce, seed, radius, out_path);
        if (experiment->parsed())
            return run_experiment_cmd(config_path, seed, seed_opt->count() > 0,
                                      out_dir);
        if (verify->parsed()) return run_verify(seed, instances, out_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
