#include "frirq/ensemble.hpp"

#include <cmath>

namespace frirq {

void TwoStateEnsemble::validate() const {
    if (!(q1 > 0) || !(q2 > 0)) throw InvalidEnsemble("priors must be positive");
    if (std::abs(q1 + q2 - 1.0) > 1e-12) throw InvalidEnsemble("priors must sum to 1");
    for (const HermitianOp* r : {&rho1, &rho2}) {
        if (std::abs(r->trace() - 1.0) > 1e-12) throw InvalidEnsemble("state trace must be 1");
        if (!is_psd(*r, kTolPsd)) throw InvalidEnsemble("state is not positive semidefinite");
    }
}

namespace {

DerivedData derive_ordered(const TwoStateEnsemble& ens, bool swapped) {
    DerivedData d;
    d.ens = ens;
    d.swapped = swapped;
    d.rho0 = ens.rho1 * ens.q1 + ens.rho2 * ens.q2;
    if (min_eigenvalue(d.rho0) < kTolSing)
        throw SingularRho0("average state is singular; the barred formalism is undefined");
    d.rho0_sqrt = spectral_fn(d.rho0, SpectralFn::Sqrt);
    d.rho0_inv_sqrt = spectral_fn(d.rho0, SpectralFn::InvSqrt);
    d.barrho1 = congruence(d.rho0_inv_sqrt, ens.rho1 * ens.q1);
    d.barrho2 = congruence(d.rho0_inv_sqrt, ens.rho2 * ens.q2);

    SpectralPair sp = spectral_2x2(d.barrho1);
    d.C1 = sp.eval_hi;
    d.C2 = 1.0 - sp.eval_lo;
    d.nu1 = sp.evec_hi;
    d.nu2 = sp.evec_lo;

    d.rho11 = std::real(bra_op_ket(d.nu1, d.rho0, d.nu1));
    d.rho22 = std::real(bra_op_ket(d.nu2, d.rho0, d.nu2));
    d.rho12 = bra_op_ket(d.nu1, d.rho0, d.nu2);
    d.rho12_zero = std::abs(d.rho12) < kTolOffdiag;

    d.e = std::abs(ens.q1 - ens.q2);
    d.v0 = to_bloch(d.rho0).second;
    d.v1 = to_bloch(ens.rho1).second;
    d.v2 = to_bloch(ens.rho2).second;
    BlochVector diff = ens.q1 * d.v1 - ens.q2 * d.v2;
    d.l = diff.norm();

    if (d.l > kTolSing) {
        d.chi_available = true;
        HermitianOp rho0_inv = spectral_fn(d.rho0, SpectralFn::Inv);
        double pref = (d.l * d.l - d.e * d.e) / (4.0 * d.l);
        double g11 = pref * std::real(bra_op_ket(d.nu1, rho0_inv, d.nu1));
        double g22 = pref * std::real(bra_op_ket(d.nu2, rho0_inv, d.nu2));
        d.gamma12 = pref * bra_op_ket(d.nu1, rho0_inv, d.nu2);
        d.chi1 = 0.5 + g11 + (2.0 * ens.q1 - 1.0) * (2.0 * d.C1 - 1.0) / (2.0 * d.l);
        d.chi2 = 0.5 + g22 + (2.0 * ens.q2 - 1.0) * (2.0 * d.C2 - 1.0) / (2.0 * d.l);
        double gap = d.chi1 - d.chi2;
        d.chi = 0.5 * (d.chi1 + d.chi2 - std::sqrt(gap * gap + 4.0 * std::norm(d.gamma12)));
    }
    d.chi_applicable = d.chi_available && d.C1 > 0.5 && !d.rho12_zero;
    return d;
}

}  // namespace

DerivedData derive(const TwoStateEnsemble& ens) {
    ens.validate();
    DerivedData d = derive_ordered(ens, false);
    if (d.C1 > d.C2) {
        TwoStateEnsemble flipped{ens.q2, ens.q1, ens.rho2, ens.rho1};
        d = derive_ordered(flipped, true);
    }
    if (d.C1 + d.C2 <= 1.0 + 1e-10)
        throw DegenerateEnsemble("confidences sum to <= 1; the two states are effectively identical");
    return d;
}

Povm unbar_povm(const DerivedData& d, const Povm& barM) {
    HermitianOp sum = barM[0] + barM[1] + barM[2];
    if (max_abs(sum - d.rho0) > 1e-8)
        throw CompletenessViolation("barred POVM does not sum to the average state");
    Povm m;
    for (int i = 0; i < 3; ++i) m[i] = congruence(d.rho0_inv_sqrt, barM[i]);
    return m;
}

Povm bar_povm(const DerivedData& d, const Povm& m) {
    Povm barM;
    for (int i = 0; i < 3; ++i) barM[i] = congruence(d.rho0_sqrt, m[i]);
    return barM;
}

}  // namespace frirq
