#include "doctest.h"

#include "prgsr/experiment.hpp"
#include "test_support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace prgsr;

namespace {

ExperimentConfig small_config(std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.seed = seed;
    cfg.m_sweep = {2, 4};
    cfg.k_sweep = {1, 3};
    cfg.r_sweep = {0.05, 0.01};
    cfg.fixed_m = 2;
    cfg.fixed_k = 1;
    cfg.bisection = {1e-6, 200};
    return cfg;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("experiment: nested sweeps keep the monotone trends") {
    const ExperimentReport report = run_experiment(small_config(99));
    REQUIRE(report.points.size() == 6);
    double prev = 1e30;
    for (const SweepPoint& pt : report.points) {
        if (pt.sweep != "m") continue;
        CHECK(pt.rho <= prev + 2e-6);
        CHECK(pt.rho >= 0.2044 - 5e-3); // never undercuts the truth
        prev = pt.rho;
    }
    prev = 1e30;
    for (const SweepPoint& pt : report.points) {
        if (pt.sweep != "r") continue; // listed in decreasing radius order
        CHECK(pt.rho <= prev + 2e-6);
        prev = pt.rho;
    }
}

TEST_CASE("experiment: outputs are deterministic and fixed-format") {
    namespace fs = std::filesystem;
    const fs::path dir1 = fs::temp_directory_path() / "prgsr_exp_a";
    const fs::path dir2 = fs::temp_directory_path() / "prgsr_exp_b";
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    const ExperimentReport r1 = run_experiment(small_config(7));
    const ExperimentReport r2 = run_experiment(small_config(7));
    emit_outputs(r1, dir1.string());
    emit_outputs(r2, dir2.string());

    for (const char* name : {"m_sweep.csv", "k_sweep.csv", "r_sweep.csv"}) {
        const std::string a = slurp(dir1 / name);
        const std::string b = slurp(dir2 / name);
        CHECK(a == b);
        CHECK(a.rfind("sweep,parameter,replication,rho,value_sup_dist,"
                      "w_minus_dist,w_plus_dist\n",
                      0) == 0);
    }
    // one data row per sweep point
    const std::string m_csv = slurp(dir1 / "m_sweep.csv");
    CHECK(std::count(m_csv.begin(), m_csv.end(), '\n') == 3);

    // a report without points for a sweep still writes the header
    ExperimentReport empty;
    empty.config = small_config(7);
    const fs::path dir3 = fs::temp_directory_path() / "prgsr_exp_c";
    fs::remove_all(dir3);
    emit_outputs(empty, dir3.string());
    CHECK(slurp(dir3 / "k_sweep.csv") ==
          "sweep,parameter,replication,rho,value_sup_dist,w_minus_dist,"
          "w_plus_dist\n");
}

TEST_CASE("experiment: empty sweep configuration is rejected") {
    ExperimentConfig cfg = small_config(1);
    cfg.m_sweep.clear();
    CHECK_THROWS(run_experiment(cfg));
}
