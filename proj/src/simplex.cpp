#include "frirq/simplex.hpp"

#include <cmath>
#include <limits>

namespace frirq {

namespace {

constexpr double kPivTol = 1e-9;
constexpr double kFeasTol = 1e-7;

struct Tableau {
    int m = 0;       // constraint rows
    int n = 0;       // variable columns (originals + artificials)
    std::vector<double> t;  // (m+1) x (n+1); row m is z_j - c_j, column n is rhs
    std::vector<int> basis;

    double& at(int i, int j) { return t[static_cast<size_t>(i) * (n + 1) + j]; }
    double at(int i, int j) const { return t[static_cast<size_t>(i) * (n + 1) + j]; }

    void pivot(int pr, int pc) {
        const double pv = at(pr, pc);
        for (int j = 0; j <= n; ++j) at(pr, j) /= pv;
        for (int i = 0; i <= m; ++i) {
            if (i == pr) continue;
            const double f = at(i, pc);
            if (f == 0.0) continue;
            for (int j = 0; j <= n; ++j) at(i, j) -= f * at(pr, j);
            at(i, pc) = 0.0;
        }
        basis[pr] = pc;
    }

    void set_objective(const std::vector<double>& cost) {
        for (int j = 0; j < n; ++j) at(m, j) = -cost[j];
        at(m, n) = 0.0;
        for (int i = 0; i < m; ++i) {
            const double cb = cost[basis[i]];
            if (cb == 0.0) continue;
            for (int j = 0; j <= n; ++j) at(m, j) += cb * at(i, j);
        }
    }

    // Bland's rule; columns >= n_enter are barred from entering.
    SimplexStatus run(int n_enter, int max_iterations, int& iterations) {
        while (iterations < max_iterations) {
            int pc = -1;
            for (int j = 0; j < n_enter; ++j) {
                if (at(m, j) < -kPivTol) {
                    pc = j;
                    break;
                }
            }
            if (pc < 0) return SimplexStatus::Optimal;

            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                if (at(i, pc) > kPivTol) best = std::min(best, at(i, n) / at(i, pc));
            }
            if (!std::isfinite(best)) return SimplexStatus::Unbounded;
            int pr = -1;
            for (int i = 0; i < m; ++i) {
                if (at(i, pc) > kPivTol && at(i, n) / at(i, pc) <= best + 1e-12) {
                    if (pr < 0 || basis[i] < basis[pr]) pr = i;
                }
            }
            pivot(pr, pc);
            ++iterations;
        }
        return SimplexStatus::IterationLimit;
    }
};

}  // namespace

SimplexResult simplex_maximize(const std::vector<std::vector<double>>& A,
                               const std::vector<double>& b, const std::vector<double>& c,
                               int max_iterations) {
    const int m = static_cast<int>(b.size());
    const int n = static_cast<int>(c.size());

    Tableau T;
    T.m = m;
    T.n = n + m;
    T.t.assign(static_cast<size_t>(m + 1) * (T.n + 1), 0.0);
    T.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        const double s = b[i] < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) T.at(i, j) = s * A[i][j];
        T.at(i, n + i) = 1.0;
        T.at(i, T.n) = s * b[i];
        T.basis[i] = n + i;
    }

    SimplexResult res;
    std::vector<double> phase1(T.n, 0.0);
    for (int j = n; j < T.n; ++j) phase1[j] = -1.0;
    T.set_objective(phase1);
    res.status = T.run(T.n, max_iterations, res.iterations);
    if (res.status != SimplexStatus::Optimal) return res;
    if (-T.at(m, T.n) > kFeasTol) {
        res.status = SimplexStatus::Infeasible;
        return res;
    }

    for (int i = 0; i < m; ++i) {
        if (T.basis[i] < n) continue;
        int pc = -1;
        for (int j = 0; j < n; ++j) {
            if (std::abs(T.at(i, j)) > kFeasTol) {
                pc = j;
                break;
            }
        }
        if (pc >= 0) {
            T.pivot(i, pc);
            ++res.iterations;
        } else {
            // Redundant constraint: neutralize the row.
            for (int j = 0; j <= T.n; ++j) T.at(i, j) = 0.0;
        }
    }

    std::vector<double> phase2(T.n, 0.0);
    for (int j = 0; j < n; ++j) phase2[j] = c[j];
    T.set_objective(phase2);
    res.status = T.run(n, max_iterations, res.iterations);
    if (res.status != SimplexStatus::Optimal) return res;

    res.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i) {
        if (T.basis[i] < n) res.x[T.basis[i]] = T.at(i, T.n);
    }
    res.objective = 0.0;
    for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
    return res;
}

}  // namespace frirq
