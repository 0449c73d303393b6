#pragma once

#include "frirq/ensemble.hpp"

namespace frirq {

// Multiplier/trace scalars of the interior solution at inconclusive degree q.
// eta values may be infinite or NaN outside the all-nonzero region; callers
// classify before trusting them.
struct LambdaEta {
    double lambda1 = 0;
    double lambda2 = 0;
    double eta0 = 0;
    double eta1 = 0;
    double eta2 = 0;
};

enum class Branch { AllNonzero, TwoElementX1, TwoElementX2 };

const char* branch_name(Branch b);

struct InteriorEval {
    double q = 0;
    double lambda1 = 0, lambda2 = 0;
    double eta0 = 0, eta1 = 0, eta2 = 0;
    Branch branch = Branch::AllNonzero;
    double P_I = 0;
    double Pbar_cor = 0;
    Povm barM{};
};

LambdaEta lambdas_etas(const DerivedData& d, double q);
Branch classify_branch(const DerivedData& d, double q);
InteriorEval interior_eval(const DerivedData& d, double q);

}  // namespace frirq
