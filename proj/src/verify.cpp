#include "frirq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "frirq/simplex.hpp"

namespace frirq {

namespace {

double van_der_corput(std::uint64_t i) {
    double f = 0.5, r = 0.0;
    while (i) {
        r += f * (i & 1u);
        i >>= 1;
        f *= 0.5;
    }
    return r;
}

BlochVector unit_or(const BlochVector& v, const BlochVector& fallback) {
    double n = v.norm();
    return n > 1e-9 ? v / n : fallback;
}

}  // namespace

KktReport check_kkt(const DerivedData& d, double q, const Povm& barM,
                    const std::array<HermitianOp, 3>& barTau, double tol) {
    KktReport rep;
    rep.completeness_residual = max_abs(barM[0] + barM[1] + barM[2] - d.rho0);

    const std::array<HermitianOp, 2> barrho{d.barrho1, d.barrho2};
    const HermitianOp qI = HermitianOp::identity() * q;
    rep.dual_consistency_residual = 0.0;
    for (int i = 0; i < 2; ++i) {
        double res = max_abs(qI + barTau[0] - barrho[i] - barTau[i + 1]);
        rep.dual_consistency_residual = std::max(rep.dual_consistency_residual, res);
    }

    for (int i = 0; i < 3; ++i) {
        rep.psd_margins[i] = min_eigenvalue(barM[i]);
        rep.dual_psd_margins[i] = min_eigenvalue(barTau[i]);
        rep.slackness[i] = trace_product(barTau[i], barM[i]);
    }

    const double dual_value = q + trace_product(d.rho0, barTau[0]);
    const double primal_value =
        q * barM[0].trace() + trace_product(d.barrho1, barM[1]) + trace_product(d.barrho2, barM[2]);
    rep.duality_gap = dual_value - primal_value;

    rep.passed = rep.completeness_residual <= tol && rep.dual_consistency_residual <= tol &&
                 std::abs(rep.duality_gap) <= tol;
    for (int i = 0; i < 3; ++i) {
        rep.passed = rep.passed && rep.psd_margins[i] >= -tol && rep.dual_psd_margins[i] >= -tol &&
                     std::abs(rep.slackness[i]) <= tol;
    }
    return rep;
}

std::array<HermitianOp, 3> kkt_duals(const DerivedData& d, Regime regime, double q) {
    auto diag_nu = [&](double m11, double m22) {
        return hermitian_in_basis(d.nu1, d.nu2, m11, m22, {0, 0});
    };
    auto bar_state_side = [&](const HermitianOp& tau) {
        return congruence(d.rho0_inv_sqrt, tau);
    };

    switch (regime) {
        case Regime::Rho12ZeroEqualC:
        case Regime::Rho12ZeroUpper:
        case Regime::BoundaryUpper: {
            const HermitianOp c2I = HermitianOp::identity() * d.C2;
            return {HermitianOp::zero(), c2I - d.barrho1, c2I - d.barrho2};
        }
        case Regime::Rho12ZeroInterior:
            return kkt_duals(d,
                             d.C1 <= 0.5 + kTolDegenerate ? Regime::BoundaryLowerHalf
                                                          : Regime::BoundaryLowerDiag,
                             q);
        case Regime::BoundaryLowerHalf:
            return {diag_nu(0, d.C1 + d.C2 - 1.0), diag_nu(1.0 - 2.0 * d.C1, 2.0 * d.C2 - 1.0),
                    HermitianOp::zero()};
        case Regime::BoundaryLowerDiag:
            return {diag_nu(0, d.C2 - d.C1), diag_nu(0, 2.0 * d.C2 - 1.0),
                    diag_nu(2.0 * d.C1 - 1.0, 0)};
        case Regime::Helstrom: {
            const double q1 = d.ens.q1, q2 = d.ens.q2;
            const double half = 0.5 * (1.0 + d.l);
            const BlochVector w = (q1 * d.v1 - q2 * d.v2) / d.l;
            const double r1 = half - q1, r2 = half - q2, r0 = half - d.chi;
            const HermitianOp tau1 = from_bloch(w * -1.0, r1);
            const BlochVector w0 = (q1 * d.v1 + r1 * (w * -1.0) - d.chi * d.v0) / r0;
            const HermitianOp tau0 = from_bloch(w0, r0);
            const HermitianOp tau2 = from_bloch(w, r2);
            return {bar_state_side(tau0), bar_state_side(tau1), bar_state_side(tau2)};
        }
        case Regime::InteriorAllNonzero: {
            LambdaEta le = lambdas_etas(d, q);
            const double r = std::abs(d.rho12);
            const double s = std::sqrt(std::max(le.lambda1 * le.lambda2, 0.0));
            const Cx phi = d.rho12_zero ? Cx{0, 0} : d.rho12 / r;
            const HermitianOp tau0 =
                hermitian_in_basis(d.nu1, d.nu2, le.lambda1, le.lambda2, -phi * s);
            return {tau0, tau0 + diag_nu(q - d.C1, q - 1.0 + d.C2),
                    tau0 + diag_nu(q - 1.0 + d.C1, q - d.C2)};
        }
        case Regime::InteriorM1Zero:
        case Regime::InteriorM2Zero: {
            const int x = regime == Regime::InteriorM1Zero ? 2 : 1;
            const double qx = x == 1 ? d.ens.q1 : d.ens.q2;
            const BlochVector vx = x == 1 ? d.v1 : d.v2;
            const BlochVector D = q * d.v0 - qx * vx;
            const double L = D.norm();
            if (L <= kTolSing) throw DomainError("two-element direction vector vanishes");
            const BlochVector c = D / L;
            const HermitianOp tau0 = from_bloch(c * -1.0, 0.5 * (L - q + qx));
            const HermitianOp taux = from_bloch(c, 0.5 * (L + q - qx));
            const HermitianOp rhoy_weighted =
                x == 1 ? d.ens.rho2 * d.ens.q2 : d.ens.rho1 * d.ens.q1;
            const HermitianOp tauy = d.rho0 * q + tau0 - rhoy_weighted;
            return {bar_state_side(tau0), bar_state_side(x == 1 ? taux : tauy),
                    bar_state_side(x == 1 ? tauy : taux)};
        }
    }
    throw ConsistencyError("unhandled regime in dual construction");
}

KktReport check_solution(const TwoStateEnsemble& ens, const FrirSolution& sol, double tol) {
    DerivedData d = derive(ens);
    Povm povm = sol.povm;
    Regime regime = sol.regime;
    if (d.swapped) {
        std::swap(povm[1], povm[2]);
        if (regime == Regime::InteriorM1Zero)
            regime = Regime::InteriorM2Zero;
        else if (regime == Regime::InteriorM2Zero)
            regime = Regime::InteriorM1Zero;
    }
    Povm barM = bar_povm(d, povm);
    return check_kkt(d, sol.q_used, barM, kkt_duals(d, regime, sol.q_used), tol);
}

const char* lp_status_name(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::IterationLimit: return "iteration_limit";
    }
    return "?";
}

std::vector<BlochVector> lp_directions(const TwoStateEnsemble& ens, int n_directions) {
    const BlochVector v1 = to_bloch(ens.rho1).second;
    const BlochVector v2 = to_bloch(ens.rho2).second;
    const BlochVector e1 = unit_or(v1, unit_or(v2, {0, 0, 1}));
    BlochVector raw2 = v2 - e1 * v2.dot(e1);
    if (raw2.norm() <= 1e-9) raw2 = BlochVector{1, 0, 0} - e1 * e1.x;
    if (raw2.norm() <= 1e-9) raw2 = BlochVector{0, 1, 0} - e1 * e1.y;
    const BlochVector e2 = raw2 / raw2.norm();

    constexpr double kPhi = 0.6180339887498949;
    constexpr double kTwoPi = 6.283185307179586;
    std::vector<BlochVector> dirs;
    dirs.reserve(static_cast<size_t>(n_directions));
    for (int k = 0; k < n_directions; ++k) {
        const double ang = kTwoPi * std::fmod(static_cast<double>(k) * kPhi, 1.0);
        if (k % 4 == 3) {
            dirs.push_back(e1 * std::cos(ang) + e2 * std::sin(ang));
        } else {
            const double z = 1.0 - 2.0 * van_der_corput(static_cast<std::uint64_t>(k) + 1);
            const double rad = std::sqrt(std::max(1.0 - z * z, 0.0));
            dirs.push_back({rad * std::cos(ang), rad * std::sin(ang), z});
        }
    }
    return dirs;
}

OracleResult lp_oracle(const TwoStateEnsemble& ens, double Q, int n_directions) {
    if (n_directions < 50) throw DomainError("the LP oracle needs at least 50 directions");
    ens.validate();

    const auto dirs = lp_directions(ens, n_directions);
    const int n = n_directions;
    const HermitianOp rho0 = ens.rho1 * ens.q1 + ens.rho2 * ens.q2;
    const BlochVector v0 = to_bloch(rho0).second;
    const BlochVector v1 = to_bloch(ens.rho1).second;
    const BlochVector v2 = to_bloch(ens.rho2).second;

    std::vector<std::vector<double>> A(5, std::vector<double>(3 * n, 0.0));
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < n; ++k) {
            const int col = i * n + k;
            A[0][col] = 1.0;
            A[1][col] = dirs[k].x;
            A[2][col] = dirs[k].y;
            A[3][col] = dirs[k].z;
            if (i == 0) A[4][col] = 0.5 * (1.0 + v0.dot(dirs[k]));
        }
    }
    const std::vector<double> b{2.0, 0.0, 0.0, 0.0, Q};

    std::vector<double> c(3 * n, 0.0);
    for (int k = 0; k < n; ++k) {
        c[1 * n + k] = ens.q1 * 0.5 * (1.0 + v1.dot(dirs[k]));
        c[2 * n + k] = ens.q2 * 0.5 * (1.0 + v2.dot(dirs[k]));
    }

    SimplexResult lp = simplex_maximize(A, b, c);
    OracleResult res;
    res.n_directions = n;
    switch (lp.status) {
        case SimplexStatus::Optimal: res.status = LpStatus::Optimal; break;
        case SimplexStatus::Infeasible: res.status = LpStatus::Infeasible; break;
        default: res.status = LpStatus::IterationLimit; break;
    }
    if (res.status != LpStatus::Optimal) {
        res.P_cor_lp = std::numeric_limits<double>::quiet_NaN();
        res.achieved_Q = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    res.P_cor_lp = lp.objective;
    res.achieved_Q = 0.0;
    for (int k = 0; k < n; ++k) res.achieved_Q += lp.x[k] * A[4][k];
    return res;
}

OracleComparison compare_oracle(const TwoStateEnsemble& ens, const std::vector<double>& Q_grid,
                                int n_directions) {
    if (Q_grid.empty()) throw DomainError("the oracle comparison needs a nonempty Q grid");
    OracleComparison cmp;
    cmp.max_gap = -std::numeric_limits<double>::infinity();
    cmp.min_gap = std::numeric_limits<double>::infinity();
    for (double Q : Q_grid) {
        OracleRow row;
        row.Q = Q;
        row.analytic = solve_frir(ens, Q).P_cor;
        OracleResult lp = lp_oracle(ens, Q, n_directions);
        row.status = lp.status;
        row.lp = lp.P_cor_lp;
        row.gap = row.analytic - row.lp;
        if (lp.status == LpStatus::Optimal) {
            cmp.max_gap = std::max(cmp.max_gap, row.gap);
            cmp.min_gap = std::min(cmp.min_gap, row.gap);
        } else {
            cmp.all_optimal = false;
        }
        cmp.rows.push_back(row);
    }
    return cmp;
}

McResult monte_carlo(const TwoStateEnsemble& ens, const Povm& povm, std::int64_t n_samples,
                     std::uint64_t seed) {
    ens.validate();
    if (n_samples < 1) throw DomainError("the sampler needs at least one sample");
    if (max_abs(povm[0] + povm[1] + povm[2] - HermitianOp::identity()) > 1e-9)
        throw InvalidPovm("POVM elements do not sum to the identity");
    for (const auto& mEl : povm) {
        if (min_eigenvalue(mEl) < -1e-9) throw InvalidPovm("POVM element is not positive");
    }

    double cum[2][2];
    const HermitianOp* states[2] = {&ens.rho1, &ens.rho2};
    for (int i = 0; i < 2; ++i) {
        double acc = 0.0;
        for (int j = 0; j < 3; ++j) {
            double p = trace_product(*states[i], povm[j]);
            if (p < -1e-9 || p > 1.0 + 1e-9)
                throw InvalidPovm("outcome probability outside [0, 1]");
            acc += std::clamp(p, 0.0, 1.0);
            if (j < 2) cum[i][j] = acc;
        }
    }

    std::mt19937_64 gen(seed);
    auto u01 = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

    std::int64_t n0 = 0, ncorr = 0;
    for (std::int64_t s = 0; s < n_samples; ++s) {
        const int i = u01() < ens.q1 ? 0 : 1;
        const double u = u01();
        const int j = u < cum[i][0] ? 0 : (u < cum[i][1] ? 1 : 2);
        if (j == 0)
            ++n0;
        else if (j - 1 == i)
            ++ncorr;
    }

    McResult res;
    res.n_samples = n_samples;
    res.n_inconclusive = n0;
    res.n_correct = ncorr;
    res.empirical_Q = static_cast<double>(n0) / static_cast<double>(n_samples);
    res.stderr_Q =
        std::sqrt(res.empirical_Q * (1.0 - res.empirical_Q) / static_cast<double>(n_samples));
    const std::int64_t conclusive = n_samples - n0;
    if (conclusive > 0) {
        res.empirical_R_cor = static_cast<double>(ncorr) / static_cast<double>(conclusive);
        res.stderr_R_cor = std::sqrt(res.empirical_R_cor * (1.0 - res.empirical_R_cor) /
                                     static_cast<double>(conclusive));
    } else {
        res.empirical_R_cor = std::numeric_limits<double>::quiet_NaN();
        res.stderr_R_cor = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

}  // namespace frirq
