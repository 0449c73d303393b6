#pragma once

#include <vector>

namespace frirq {

enum class SimplexStatus { Optimal, Infeasible, IterationLimit, Unbounded };

struct SimplexResult {
    SimplexStatus status = SimplexStatus::Optimal;
    double objective = 0;
    std::vector<double> x;
    int iterations = 0;
};

// Maximize c.x subject to A x = b, x >= 0, via a dense two-phase tableau
// with Bland's rule. A is row-major, one inner vector per constraint.
SimplexResult simplex_maximize(const std::vector<std::vector<double>>& A,
                               const std::vector<double>& b, const std::vector<double>& c,
                               int max_iterations = 50000);

}  // namespace frirq
