#pragma once

#include "frirq/linalg.hpp"

namespace frirq {

struct TwoStateEnsemble {
    double q1 = 0.5, q2 = 0.5;
    HermitianOp rho1, rho2;

    // Throws InvalidEnsemble on violated priors/state invariants.
    void validate() const;
};

// Everything the case analysis consumes, with labels relabeled so C1 <= C2.
struct DerivedData {
    TwoStateEnsemble ens;  // post-relabeling
    bool swapped = false;

    HermitianOp rho0, rho0_sqrt, rho0_inv_sqrt;
    HermitianOp barrho1, barrho2;
    double C1 = 0, C2 = 0;
    Ket nu1, nu2;
    double rho11 = 0, rho22 = 0;
    Cx rho12{0, 0};
    bool rho12_zero = true;  // |rho12| < kTolOffdiag
    double e = 0, l = 0;
    BlochVector v0, v1, v2;

    Cx gamma12{0, 0};
    double chi1 = 0, chi2 = 0, chi = 0;
    bool chi_available = false;   // l > kTolSing so the formula evaluates
    bool chi_applicable = false;  // 1/2 < C1 and rho12 != 0 (its regime)

    double Q1() const { return rho11 + std::norm(rho12) / rho11; }
    double Q2() const { return rho22 + std::norm(rho12) / rho22; }
    bool degenerate_C() const { return C2 - C1 < kTolDegenerate; }
};

DerivedData derive(const TwoStateEnsemble& ens);

// M_i = rho0^{-1/2} barM_i rho0^{-1/2}; requires sum(barM) = rho0.
Povm unbar_povm(const DerivedData& d, const Povm& barM);

// barM_i = rho0^{1/2} M_i rho0^{1/2} (inverse of unbar_povm).
Povm bar_povm(const DerivedData& d, const Povm& m);

}  // namespace frirq
