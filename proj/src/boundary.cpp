#include "frirq/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace frirq {

namespace {

enum class HalfCmp { Less, Equal, Greater };

HalfCmp c1_vs_half(const DerivedData& d) {
    if (d.C1 < 0.5 - kTolDegenerate) return HalfCmp::Less;
    if (d.C1 > 0.5 + kTolDegenerate) return HalfCmp::Greater;
    return HalfCmp::Equal;
}

// Full admissible closed epsilon interval of the POVM family at Q, or empty
// for the regime without a free parameter.
std::optional<EpsRange> eps_bounds(const DerivedData& d, BoundaryRegime regime, double Q) {
    double r = std::abs(d.rho12);
    switch (regime) {
        case BoundaryRegime::UpperC1LtC2:
            return EpsRange{d.rho11, d.rho11};
        case BoundaryRegime::UpperEqCaseA:
        case BoundaryRegime::UpperEqCaseB:
        case BoundaryRegime::UpperEqCaseC: {
            double s = std::sqrt(std::max(0.25 * Q * Q - r * r, 0.0));
            double lo = std::max(Q - d.rho22, 0.5 * Q - s);
            double hi = std::min(d.rho11, 0.5 * Q + s);
            return EpsRange{lo, std::max(lo, hi)};
        }
        case BoundaryRegime::LowerC1LeHalf:
            if (c1_vs_half(d) == HalfCmp::Equal) return EpsRange{0.0, std::max(0.0, 1.0 - d.Q2() - Q)};
            return EpsRange{0.0, 0.0};
        case BoundaryRegime::LowerRho12Zero:
            if (d.degenerate_C())
                return EpsRange{std::max(0.0, Q - d.rho11), std::max(std::max(0.0, Q - d.rho11), std::min(d.rho22, Q))};
            return EpsRange{0.0, 0.0};
        case BoundaryRegime::LowerRho12Nonzero:
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

const char* boundary_regime_name(BoundaryRegime regime) {
    switch (regime) {
        case BoundaryRegime::UpperC1LtC2: return "upper_distinct_C";
        case BoundaryRegime::UpperEqCaseA: return "upper_equal_C_a";
        case BoundaryRegime::UpperEqCaseB: return "upper_equal_C_b";
        case BoundaryRegime::UpperEqCaseC: return "upper_equal_C_c";
        case BoundaryRegime::LowerC1LeHalf: return "lower_C1_le_half";
        case BoundaryRegime::LowerRho12Zero: return "lower_diagonal";
        case BoundaryRegime::LowerRho12Nonzero: return "lower_coherent";
    }
    return "unknown";
}

BoundaryCase q0_upper(const DerivedData& d) {
    BoundaryCase bc;
    bc.side = Side::Upper;
    bc.q0 = d.C2;
    bc.interval.hi = 1.0;
    double r = std::abs(d.rho12);
    if (!d.degenerate_C()) {
        bc.regime = BoundaryRegime::UpperC1LtC2;
        bc.interval.lo = d.Q1();
    } else if (r <= d.rho11 && r <= d.rho22) {
        bc.regime = BoundaryRegime::UpperEqCaseC;
        bc.interval.lo = 2.0 * r;
    } else if (d.rho11 < r && r <= d.rho22) {
        bc.regime = BoundaryRegime::UpperEqCaseA;
        bc.interval.lo = d.Q1();
    } else {
        bc.regime = BoundaryRegime::UpperEqCaseB;
        bc.interval.lo = d.Q2();
    }
    bc.interval.degenerate_point = bc.interval.hi - bc.interval.lo <= 0.0;
    return bc;
}

BoundaryCase q0_lower(const DerivedData& d) {
    BoundaryCase bc;
    bc.side = Side::Lower;
    if (c1_vs_half(d) != HalfCmp::Greater) {
        bc.regime = BoundaryRegime::LowerC1LeHalf;
        bc.q0 = 1.0 - d.C1;
        bc.interval = {0.0, 1.0 - d.Q2(), false};
    } else if (d.rho12_zero) {
        bc.regime = BoundaryRegime::LowerRho12Zero;
        bc.q0 = d.C1;
        bc.interval = {0.0, d.rho11 + (d.degenerate_C() ? d.rho22 : 0.0), false};
    } else {
        bc.regime = BoundaryRegime::LowerRho12Nonzero;
        bc.q0 = d.chi;
        bc.interval = {0.0, 0.0, true};
    }
    bc.interval.degenerate_point = bc.interval.hi - bc.interval.lo <= 0.0;
    return bc;
}

std::optional<EpsRange> epsilon_range_at(const DerivedData& d, const BoundaryCase& bc, double Q) {
    auto bounds = eps_bounds(d, bc.regime, Q);
    if (!bounds || bounds->is_point()) return std::nullopt;
    return bounds;
}

BoundarySolution boundary_solution(const DerivedData& d, const BoundaryCase& bc, double Q,
                                   std::optional<double> epsilon) {
    if (!bc.interval.contains(Q))
        throw QOutOfInterval("Q outside the failure-probability interval of this boundary");
    Q = std::clamp(Q, bc.interval.lo, bc.interval.hi);

    BoundarySolution sol;
    sol.bc = bc;
    sol.bc.epsilon_range = epsilon_range_at(d, bc, Q);

    auto bounds = eps_bounds(d, bc.regime, Q);
    double eps = 0.0;
    if (bounds) {
        eps = epsilon ? *epsilon : bounds->midpoint();
        if (eps < bounds->lo - kTolInterval || eps > bounds->hi + kTolInterval)
            throw EpsilonOutOfRange("epsilon outside the admissible range for this Q");
        eps = std::clamp(eps, bounds->lo, bounds->hi);
        sol.epsilon = eps;
        sol.unique = bounds->is_point();
    } else if (epsilon) {
        throw EpsilonOutOfRange("this regime has no epsilon freedom");
    }

    const double q1 = d.ens.q1, q2 = d.ens.q2;
    switch (bc.regime) {
        case BoundaryRegime::UpperC1LtC2:
        case BoundaryRegime::UpperEqCaseA:
        case BoundaryRegime::UpperEqCaseB:
        case BoundaryRegime::UpperEqCaseC:
            sol.q_used = d.C2;
            sol.pbar_cor = d.C2;
            sol.r_cor = d.C2;
            sol.barM[0] = hermitian_in_basis(d.nu1, d.nu2, eps, Q - eps, d.rho12);
            sol.barM[1] = hermitian_in_basis(d.nu1, d.nu2, d.rho11 - eps, 0.0, {0, 0});
            sol.barM[2] = hermitian_in_basis(d.nu1, d.nu2, 0.0, d.rho22 - Q + eps, {0, 0});
            break;
        case BoundaryRegime::LowerC1LeHalf:
            sol.q_used = 1.0 - d.C1;
            sol.pbar_cor = q2;
            sol.r_cor = 1.0 - d.C1 + (d.C1 - q1) / (1.0 - Q);
            sol.barM[0] = hermitian_in_basis(d.nu1, d.nu2, Q, 0.0, {0, 0});
            sol.barM[1] = hermitian_in_basis(d.nu1, d.nu2, eps, 0.0, {0, 0});
            sol.barM[2] = hermitian_in_basis(d.nu1, d.nu2, d.rho11 - Q - eps, d.rho22, d.rho12);
            break;
        case BoundaryRegime::LowerRho12Zero:
            sol.q_used = d.C1;
            sol.pbar_cor = d.rho11 * d.C1 + d.rho22 * d.C2;
            sol.r_cor = d.C1 + d.rho22 * (d.C2 - d.C1) / (1.0 - Q);
            sol.barM[0] = hermitian_in_basis(d.nu1, d.nu2, Q - eps, eps, {0, 0});
            sol.barM[1] = hermitian_in_basis(d.nu1, d.nu2, d.rho11 - Q + eps, 0.0, {0, 0});
            sol.barM[2] = hermitian_in_basis(d.nu1, d.nu2, 0.0, d.rho22 - eps, {0, 0});
            break;
        case BoundaryRegime::LowerRho12Nonzero: {
            sol.q_used = d.chi;
            sol.pbar_cor = 0.5 * (1.0 + d.l);
            sol.r_cor = sol.pbar_cor;
            BlochVector h = (q1 * d.v1 - q2 * d.v2) / d.l;
            Povm plain{HermitianOp::zero(), from_bloch(h, 1.0), from_bloch(h * -1.0, 1.0)};
            sol.barM = bar_povm(d, plain);
            sol.barM[0] = HermitianOp::zero();
            break;
        }
    }
    return sol;
}

}  // namespace frirq
