#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace prgsr::lp {

enum class Sense { minimize, maximize };
enum class Rel { le, eq, ge };
enum class Status { optimal, infeasible, unbounded, numeric_failure };

constexpr double inf = std::numeric_limits<double>::infinity();

struct Row {
    std::vector<double> coeffs;
    Rel rel = Rel::le;
    double rhs = 0.0;
    int tag = 0; // caller-defined row family, used for structural audits
};

/// Dense linear program.  Default variable bounds are [0, +inf); a lower
/// bound of -inf makes the variable free.
struct Problem {
    Sense sense = Sense::minimize;
    std::size_t nvars = 0;
    std::vector<double> objective;
    std::vector<Row> rows;
    std::vector<double> lower;
    std::vector<double> upper;

    explicit Problem(Sense s = Sense::minimize, std::size_t n = 0);
    std::size_t add_var(double lo = 0.0, double hi = inf, double obj = 0.0);
    void add_row(std::vector<double> coeffs, Rel rel, double rhs, int tag = 0);
};

struct Solution {
    Status status = Status::numeric_failure;
    double objective = 0.0;
    std::vector<double> x;
    /// Duals of the original rows (sign convention: objective ==
    /// sum rhs_i * dual_i + contribution of active variable bounds, for the
    /// problem rewritten as a minimization).
    std::vector<double> row_duals;
    int iterations = 0;
};

/// Two-phase dense primal simplex.  Dantzig pricing with a switch to Bland's
/// rule after 10*(rows+cols) iterations; pivots smaller than 1e-9 are treated
/// as zero.
Solution solve(const Problem& p);

/// Line-based textual dump for debugging (not a standard format): one line
/// per row as "<coeff>*x<i> ... <rel> <rhs>", preceded by the objective and
/// bounds.
std::string dump(const Problem& p);

} // namespace prgsr::lp
