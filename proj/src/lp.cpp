#include "prgsr/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace prgsr::lp {

Problem::Problem(Sense s, std::size_t n) : sense(s), nvars(n) {
    objective.assign(n, 0.0);
    lower.assign(n, 0.0);
    upper.assign(n, inf);
}

std::size_t Problem::add_var(double lo, double hi, double obj) {
    objective.push_back(obj);
    lower.push_back(lo);
    upper.push_back(hi);
    return nvars++;
}

void Problem::add_row(std::vector<double> coeffs, Rel rel, double rhs, int tag) {
    if (coeffs.size() != nvars)
        throw std::invalid_argument("lp: row length mismatch");
    rows.push_back(Row{std::move(coeffs), rel, rhs, tag});
}

std::string dump(const Problem& p) {
    std::ostringstream os;
    os.precision(17);
    os << (p.sense == Sense::minimize ? "min" : "max");
    for (std::size_t j = 0; j < p.nvars; ++j)
        if (p.objective[j] != 0.0) os << ' ' << p.objective[j] << "*x" << j;
    os << '\n';
    for (const Row& r : p.rows) {
        for (std::size_t j = 0; j < p.nvars; ++j)
            if (r.coeffs[j] != 0.0) os << r.coeffs[j] << "*x" << j << ' ';
        os << (r.rel == Rel::le ? "<=" : r.rel == Rel::ge ? ">=" : "=") << ' '
           << r.rhs << '\n';
    }
    for (std::size_t j = 0; j < p.nvars; ++j)
        if (p.lower[j] != 0.0 || p.upper[j] != inf)
            os << p.lower[j] << " <= x" << j << " <= " << p.upper[j] << '\n';
    return os.str();
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kDropTol = 1e-12;
constexpr double kFeasTol = 1e-7;

// Dense simplex working tableau: A is row-major m x n, b the right-hand
// sides, d the reduced-cost row of the active phase.
struct Tableau {
    std::size_t m = 0, n = 0;
    std::vector<double> a; // m*n
    std::vector<double> b; // m
    std::vector<int> basis; // m, column index basic in each row
    std::vector<char> banned; // n, columns excluded from entering

    double* row(std::size_t i) { return a.data() + i * n; }
    const double* row(std::size_t i) const { return a.data() + i * n; }

    void pivot(std::size_t r, std::size_t e, std::vector<double>& d,
               double& z) {
        double* pr = row(r);
        const double piv = pr[e];
        const double inv = 1.0 / piv;
        for (std::size_t j = 0; j < n; ++j) pr[j] *= inv;
        pr[e] = 1.0;
        b[r] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            double* pi = row(i);
            const double f = pi[e];
            if (std::abs(f) <= kDropTol) {
                pi[e] = 0.0;
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) pi[j] -= f * pr[j];
            pi[e] = 0.0;
            b[i] -= f * b[r];
            if (b[i] < 0.0 && b[i] > -1e-11) b[i] = 0.0;
        }
        const double de = d[e];
        if (std::abs(de) > 0.0) {
            for (std::size_t j = 0; j < n; ++j) d[j] -= de * pr[j];
            z += de * b[r];
        }
        d[e] = 0.0;
        basis[r] = static_cast<int>(e);
    }
};

enum class RunResult { optimal, unbounded, stalled };

// Runs the simplex on the current phase costs. `z` tracks the phase
// objective change; Dantzig pricing switches to Bland's rule after
// 10*(m+n) iterations.
RunResult run_simplex(Tableau& t, std::vector<double>& d, double& z,
                      int& iterations) {
    const long bland_after = 10 * static_cast<long>(t.m + t.n);
    const long hard_cap = 200 * static_cast<long>(t.m + t.n) + 200000;
    for (long it = 0;; ++it) {
        if (it > hard_cap) return RunResult::stalled;
        const bool bland = it >= bland_after;
        // entering column
        std::size_t e = t.n;
        double best = -kPivotTol;
        for (std::size_t j = 0; j < t.n; ++j) {
            if (t.banned[j]) continue;
            if (d[j] < best) {
                best = d[j];
                e = j;
                if (bland) break;
            }
        }
        if (e == t.n) return RunResult::optimal;

        // ratio test
        std::size_t r = t.m;
        double best_ratio = inf;
        for (std::size_t i = 0; i < t.m; ++i) {
            const double aie = t.row(i)[e];
            if (aie <= kPivotTol) continue;
            const double ratio = t.b[i] / aie;
            if (ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && r < t.m &&
                 (bland ? t.basis[i] < t.basis[r]
                        : aie > t.row(r)[e]))) {
                best_ratio = ratio;
                r = i;
            }
        }
        if (r == t.m) return RunResult::unbounded;
        t.pivot(r, e, d, z);
        ++iterations;
    }
}

} // namespace

Solution solve(const Problem& prob) {
    Solution sol;
    const std::size_t nv = prob.nvars;

    // -- standard-form transcription ------------------------------------
    // Shift finite lower bounds to zero, split free variables, turn finite
    // upper bounds into extra rows, then add slack/surplus/artificial
    // columns per row.
    struct VarMap {
        std::size_t col = 0;      // shifted column
        std::size_t neg_col = 0;  // second column of a free split
        bool free_split = false;
        double shift = 0.0;
    };
    std::vector<VarMap> vmap(nv);
    std::size_t ncols = 0;
    double obj_const = 0.0;
    for (std::size_t j = 0; j < nv; ++j) {
        if (prob.lower[j] == -inf) {
            vmap[j] = {ncols, ncols + 1, true, 0.0};
            ncols += 2;
        } else {
            vmap[j] = {ncols, 0, false, prob.lower[j]};
            ncols += 1;
        }
    }

    struct InternalRow {
        std::vector<double> coeffs;
        Rel rel;
        double rhs;
        bool from_original;
        std::size_t orig_index;
        bool negated = false;
    };
    std::vector<InternalRow> irows;
    irows.reserve(prob.rows.size() + nv);

    const double sign = prob.sense == Sense::minimize ? 1.0 : -1.0;
    std::vector<double> cost(ncols, 0.0);
    for (std::size_t j = 0; j < nv; ++j) {
        const double cj = sign * prob.objective[j];
        cost[vmap[j].col] += cj;
        if (vmap[j].free_split) cost[vmap[j].neg_col] -= cj;
        obj_const += cj * vmap[j].shift;
    }

    for (std::size_t r = 0; r < prob.rows.size(); ++r) {
        const Row& row = prob.rows[r];
        InternalRow ir;
        ir.coeffs.assign(ncols, 0.0);
        ir.rel = row.rel;
        ir.rhs = row.rhs;
        ir.from_original = true;
        ir.orig_index = r;
        for (std::size_t j = 0; j < nv; ++j) {
            const double a = row.coeffs[j];
            if (a == 0.0) continue;
            ir.coeffs[vmap[j].col] += a;
            if (vmap[j].free_split) ir.coeffs[vmap[j].neg_col] -= a;
            ir.rhs -= a * vmap[j].shift;
        }
        irows.push_back(std::move(ir));
    }
    for (std::size_t j = 0; j < nv; ++j) {
        if (prob.upper[j] == inf) continue;
        if (prob.lower[j] == -inf)
            throw std::invalid_argument(
                "lp: finite upper bound on a free variable is unsupported");
        InternalRow ir;
        ir.coeffs.assign(ncols, 0.0);
        ir.coeffs[vmap[j].col] = 1.0;
        ir.rel = Rel::le;
        ir.rhs = prob.upper[j] - prob.lower[j];
        ir.from_original = false;
        ir.orig_index = 0;
        irows.push_back(std::move(ir));
    }

    // row equilibration keeps pivots well scaled when piece widths differ by
    // orders of magnitude; duals are mapped back through the scale factors
    std::vector<double> row_scale(irows.size(), 1.0);
    for (std::size_t i = 0; i < irows.size(); ++i) {
        double amax = 0.0;
        for (double a : irows[i].coeffs) amax = std::max(amax, std::abs(a));
        if (amax > 0.0 && (amax > 16.0 || amax < 1.0 / 16.0)) {
            const double s = 1.0 / amax;
            row_scale[i] = s;
            for (double& a : irows[i].coeffs) a *= s;
            irows[i].rhs *= s;
        }
    }

    for (InternalRow& ir : irows) {
        if (ir.rhs < 0.0) {
            for (double& a : ir.coeffs) a = -a;
            ir.rhs = -ir.rhs;
            ir.rel = ir.rel == Rel::le ? Rel::ge : ir.rel == Rel::ge ? Rel::le
                                                                     : Rel::eq;
            ir.negated = true;
        }
    }

    const std::size_t m = irows.size();
    std::size_t n_aux = 0;
    for (const InternalRow& ir : irows)
        n_aux += ir.rel == Rel::eq ? 1 : ir.rel == Rel::ge ? 2 : 1;

    Tableau t;
    t.m = m;
    t.n = ncols + n_aux;
    t.a.assign(t.m * t.n, 0.0);
    t.b.resize(m);
    t.basis.assign(m, -1);
    t.banned.assign(t.n, 0);

    std::vector<std::size_t> unit_col(m); // +e_i column of each row
    std::vector<char> is_artificial(t.n, 0);
    std::size_t next = ncols;
    for (std::size_t i = 0; i < m; ++i) {
        double* ai = t.row(i);
        std::copy(irows[i].coeffs.begin(), irows[i].coeffs.end(), ai);
        t.b[i] = irows[i].rhs;
        switch (irows[i].rel) {
        case Rel::le:
            ai[next] = 1.0;
            unit_col[i] = next;
            t.basis[i] = static_cast<int>(next++);
            break;
        case Rel::ge:
            ai[next] = -1.0;
            ++next;
            ai[next] = 1.0;
            is_artificial[next] = 1;
            unit_col[i] = next;
            t.basis[i] = static_cast<int>(next++);
            break;
        case Rel::eq:
            ai[next] = 1.0;
            is_artificial[next] = 1;
            unit_col[i] = next;
            t.basis[i] = static_cast<int>(next++);
            break;
        }
    }

    // -- phase 1 ---------------------------------------------------------
    bool need_phase1 = false;
    for (std::size_t j = 0; j < t.n; ++j) need_phase1 |= is_artificial[j] != 0;
    int iterations = 0;
    if (need_phase1) {
        std::vector<double> d(t.n, 0.0);
        for (std::size_t j = 0; j < t.n; ++j)
            if (is_artificial[j]) d[j] = 1.0;
        double z = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!is_artificial[static_cast<std::size_t>(t.basis[i])]) continue;
            const double* ai = t.row(i);
            for (std::size_t j = 0; j < t.n; ++j) d[j] -= ai[j];
            z += t.b[i];
        }
        const RunResult rr = run_simplex(t, d, z, iterations);
        if (rr == RunResult::stalled) {
            sol.status = Status::numeric_failure;
            return sol;
        }
        double infeas = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (is_artificial[static_cast<std::size_t>(t.basis[i])])
                infeas += t.b[i];
        if (infeas > kFeasTol) {
            sol.status = Status::infeasible;
            sol.iterations = iterations;
            return sol;
        }
        // Drive remaining artificials out of the basis where a pivot exists;
        // rows without one are redundant and keep a zero-valued artificial
        // that is banned from re-entering.
        for (std::size_t i = 0; i < m; ++i) {
            if (!is_artificial[static_cast<std::size_t>(t.basis[i])]) continue;
            const double* ai = t.row(i);
            std::size_t e = t.n;
            for (std::size_t j = 0; j < t.n; ++j) {
                if (is_artificial[j]) continue;
                if (std::abs(ai[j]) > kPivotTol) {
                    e = j;
                    break;
                }
            }
            if (e < t.n) {
                double zdummy = 0.0;
                std::vector<double> ddummy(t.n, 0.0);
                t.pivot(i, e, ddummy, zdummy);
            }
        }
        for (std::size_t j = 0; j < t.n; ++j)
            if (is_artificial[j]) t.banned[j] = 1;
    }

    // -- phase 2 ---------------------------------------------------------
    std::vector<double> d(t.n, 0.0);
    for (std::size_t j = 0; j < ncols; ++j) d[j] = cost[j];
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t bj = static_cast<std::size_t>(t.basis[i]);
        const double cb = bj < ncols ? cost[bj] : 0.0;
        if (cb == 0.0) continue;
        const double* ai = t.row(i);
        for (std::size_t j = 0; j < t.n; ++j) d[j] -= cb * ai[j];
        z += cb * t.b[i];
    }
    const RunResult rr = run_simplex(t, d, z, iterations);
    if (rr == RunResult::stalled) {
        sol.status = Status::numeric_failure;
        sol.iterations = iterations;
        return sol;
    }
    if (rr == RunResult::unbounded) {
        sol.status = Status::unbounded;
        sol.iterations = iterations;
        return sol;
    }

    // -- recover the original solution -----------------------------------
    std::vector<double> xs(t.n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        xs[static_cast<std::size_t>(t.basis[i])] = t.b[i];
    sol.x.assign(nv, 0.0);
    for (std::size_t j = 0; j < nv; ++j) {
        double v = xs[vmap[j].col];
        if (vmap[j].free_split) v -= xs[vmap[j].neg_col];
        sol.x[j] = v + vmap[j].shift;
    }
    double obj = obj_const;
    for (std::size_t jc = 0; jc < ncols; ++jc) obj += cost[jc] * xs[jc];
    sol.objective = prob.sense == Sense::minimize ? obj : -obj;

    sol.row_duals.assign(prob.rows.size(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (!irows[i].from_original) continue;
        // y_i = cB * B^-1 e_i, read off the +e_i column of row i.
        double y = -d[unit_col[i]];
        if (irows[i].negated) y = -y;
        sol.row_duals[irows[i].orig_index] = y * row_scale[i];
    }

    sol.status = Status::optimal;
    sol.iterations = iterations;
    return sol;
}

} // namespace prgsr::lp
