#include "frirq/solver.hpp"

#include <cmath>
#include <utility>

namespace frirq {

namespace {

void require_valid_rate(double Q) {
    if (!(Q >= 0.0 && Q < 1.0)) throw QOutOfRange("Q must lie in [0, 1)");
}

// Assemble a user-facing solution from barred-picture pieces computed in the
// (possibly relabeled) derived ordering.
FrirSolution package(const DerivedData& d, double Q, double pbar, double q_used, const Povm& barM,
                     Regime regime, bool unique, std::optional<double> epsilon) {
    FrirSolution sol;
    sol.Q = Q;
    sol.Pbar_cor = pbar;
    sol.q_used = q_used;
    sol.P_cor = pbar - q_used * Q;
    sol.R_cor = sol.P_cor / (1.0 - Q);
    sol.regime = regime;
    sol.unique = unique;
    sol.epsilon = epsilon;
    sol.povm = unbar_povm(d, barM);
    if (d.swapped) {
        std::swap(sol.povm[1], sol.povm[2]);
        if (regime == Regime::InteriorM1Zero) sol.regime = Regime::InteriorM2Zero;
        if (regime == Regime::InteriorM2Zero) sol.regime = Regime::InteriorM1Zero;
    }
    return sol;
}

bool helstrom_unique(const DerivedData& d) {
    return d.l - d.e > 1e-12;
}

Regime lower_regime(BoundaryRegime r) {
    switch (r) {
        case BoundaryRegime::LowerC1LeHalf: return Regime::BoundaryLowerHalf;
        case BoundaryRegime::LowerRho12Zero: return Regime::BoundaryLowerDiag;
        default: return Regime::Helstrom;
    }
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Rho12ZeroEqualC: return "rho12_zero_equal_C";
        case Regime::Rho12ZeroInterior: return "rho12_zero_interior";
        case Regime::Rho12ZeroUpper: return "rho12_zero_upper";
        case Regime::BoundaryUpper: return "boundary_upper";
        case Regime::BoundaryLowerHalf: return "boundary_lower_half";
        case Regime::BoundaryLowerDiag: return "boundary_lower_diag";
        case Regime::Helstrom: return "helstrom";
        case Regime::InteriorAllNonzero: return "interior_all_nonzero";
        case Regime::InteriorM1Zero: return "interior_M1_zero";
        case Regime::InteriorM2Zero: return "interior_M2_zero";
    }
    return "?";
}

FrirSolution solve_frir(const TwoStateEnsemble& ens, double Q, std::optional<double> epsilon) {
    require_valid_rate(Q);
    DerivedData d = derive(ens);
    if (d.rho12_zero) return solve_rho12_zero(ens, Q, epsilon);

    BoundaryCase upper = q0_upper(d);
    if (upper.interval.contains(Q)) {
        auto bs = boundary_solution(d, upper, Q, epsilon);
        return package(d, Q, bs.pbar_cor, bs.q_used, bs.barM, Regime::BoundaryUpper, bs.unique,
                       bs.epsilon);
    }

    BoundaryCase lower = q0_lower(d);
    if (lower.interval.contains(Q)) {
        auto bs = boundary_solution(d, lower, Q, epsilon);
        bool unique = lower.regime == BoundaryRegime::LowerRho12Nonzero ? helstrom_unique(d) : bs.unique;
        return package(d, Q, bs.pbar_cor, bs.q_used, bs.barM, lower_regime(lower.regime), unique,
                       bs.epsilon);
    }

    if (epsilon) throw EpsilonOutOfRange("the interior optimum has no epsilon freedom");
    double q = invert_failure_probability(d, Q);
    InteriorEval ev = interior_eval(d, q);
    Regime regime = ev.branch == Branch::AllNonzero    ? Regime::InteriorAllNonzero
                    : ev.branch == Branch::TwoElementX2 ? Regime::InteriorM1Zero
                                                         : Regime::InteriorM2Zero;
    return package(d, Q, ev.Pbar_cor, q, ev.barM, regime, true, {});
}

FrirSolution solve_rho12_zero(const TwoStateEnsemble& ens, double Q, std::optional<double> epsilon) {
    require_valid_rate(Q);
    DerivedData d = derive(ens);
    if (!d.rho12_zero) throw NotApplicable("states are not simultaneously diagonalizable");

    Regime regime;
    BoundaryCase bc;
    if (d.degenerate_C()) {
        bc = q0_upper(d);
        regime = Regime::Rho12ZeroEqualC;
    } else if (Q >= d.rho11) {
        bc = q0_upper(d);
        regime = Regime::Rho12ZeroUpper;
    } else {
        bc = q0_lower(d);
        regime = Regime::Rho12ZeroInterior;
    }
    auto bs = boundary_solution(d, bc, Q, epsilon);
    return package(d, Q, bs.pbar_cor, bs.q_used, bs.barM, regime, bs.unique, bs.epsilon);
}

double invert_failure_probability(const DerivedData& d, double Q) {
    if (d.rho12_zero)
        throw NotApplicable("the q to P_I map is not invertible without coherence");
    BoundaryCase lower = q0_lower(d);
    BoundaryCase upper = q0_upper(d);
    if (!(Q > lower.interval.hi && Q < upper.interval.lo))
        throw BracketFailure("Q does not lie strictly between the boundary intervals");

    double lo = lower.q0, hi = upper.q0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double p = interior_eval(d, mid).P_I;
        if (std::abs(p - Q) <= 1e-10) return mid;
        if (p < Q)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14) break;
    }
    return 0.5 * (lo + hi);
}

FrirSolution closed_form_equal_C(const TwoStateEnsemble& ens, double Q) {
    require_valid_rate(Q);
    DerivedData d = derive(ens);
    if (!d.degenerate_C() || d.rho12_zero)
        throw NotApplicable("closed form requires equal confidences and nonzero rho12");

    const double r = std::abs(d.rho12);
    const double C = 0.5 * (d.C1 + d.C2);
    const bool main_case = r <= d.rho11 + 1e-12 && r <= d.rho22 + 1e-12;
    const double top = main_case ? 2.0 * r : 2.0 * (d.rho11 * d.rho22 - r * r) / (1.0 - 2.0 * r);
    if (Q > top + 1e-12) throw NotApplicable("Q is beyond the closed form's validity range");

    const double k = 2.0 * C - 1.0;
    const double q = 0.5 + 0.5 * k * std::sqrt((1.0 - 2.0 * r) / (1.0 + 2.0 * r - 2.0 * Q));
    const double P = 0.5 * (1.0 - Q) + 0.5 * k * std::sqrt((1.0 - 2.0 * r) * (1.0 + 2.0 * r - 2.0 * Q));

    FrirSolution sol;
    if (Q <= 1e-12) {
        auto bs = boundary_solution(d, q0_lower(d), Q);
        sol = package(d, Q, bs.pbar_cor, bs.q_used, bs.barM, Regime::Helstrom, helstrom_unique(d), {});
    } else if (main_case && Q >= top - 1e-11) {
        auto bs = boundary_solution(d, q0_upper(d), Q);
        sol = package(d, Q, bs.pbar_cor, bs.q_used, bs.barM, Regime::BoundaryUpper, bs.unique, bs.epsilon);
    } else {
        InteriorEval ev = interior_eval(d, q);
        Regime regime = ev.branch == Branch::AllNonzero    ? Regime::InteriorAllNonzero
                        : ev.branch == Branch::TwoElementX2 ? Regime::InteriorM1Zero
                                                             : Regime::InteriorM2Zero;
        sol = package(d, Q, ev.Pbar_cor, q, ev.barM, regime, true, {});
    }
    sol.q_used = q;
    sol.P_cor = P;
    sol.R_cor = P / (1.0 - Q);
    sol.Pbar_cor = P + q * Q;
    return sol;
}

std::vector<DegreeRow> sweep_q(const TwoStateEnsemble& ens, int n_points) {
    if (n_points < 2) throw DomainError("a sweep needs at least 2 grid points");
    DerivedData d = derive(ens);
    if (d.rho12_zero)
        throw NotApplicable("the inconclusive-degree sweep requires nonzero rho12");
    const double lo = q0_lower(d).q0;
    const double hi = q0_upper(d).q0;
    std::vector<DegreeRow> rows;
    rows.reserve(static_cast<size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        double q = lo + (hi - lo) * (i + 1) / (n_points + 1);
        InteriorEval ev = interior_eval(d, q);
        rows.push_back({q, ev.P_I, ev.Pbar_cor, ev.lambda1, ev.lambda2, ev.eta0, ev.eta1, ev.eta2,
                        ev.branch});
    }
    return rows;
}

std::vector<RateRow> sweep_Q(const TwoStateEnsemble& ens, int n_points) {
    if (n_points < 2) throw DomainError("a sweep needs at least 2 grid points");
    std::vector<RateRow> rows;
    rows.reserve(static_cast<size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        double Q = static_cast<double>(i) / n_points;
        FrirSolution s = solve_frir(ens, Q);
        rows.push_back({Q, s.R_cor, s.P_cor, (1.0 - Q) - s.P_cor, s.q_used, s.regime});
    }
    return rows;
}

}  // namespace frirq
