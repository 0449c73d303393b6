#pragma once

#include <optional>

#include "frirq/ensemble.hpp"

namespace frirq {

inline constexpr double kTolInterval = 1e-10;

struct PiInterval {
    double lo = 0, hi = 0;
    bool degenerate_point = false;

    bool contains(double Q, double tol = kTolInterval) const {
        return Q >= lo - tol && Q <= hi + tol;
    }
};

enum class Side { Upper, Lower };

enum class BoundaryRegime {
    // upper (q0 = C2)
    UpperC1LtC2,
    UpperEqCaseA,  // C1=C2, rho11 < |rho12| <= rho22
    UpperEqCaseB,  // C1=C2, rho22 < |rho12| <= rho11
    UpperEqCaseC,  // C1=C2, |rho12| <= rho11, rho22
    // lower
    LowerC1LeHalf,    // q0 = 1-C1
    LowerRho12Zero,   // q0 = C1
    LowerRho12Nonzero // q0 = chi, interval {0}
};

struct EpsRange {
    double lo = 0, hi = 0;

    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool is_point(double tol = 1e-12) const { return width() <= tol; }
};

struct BoundaryCase {
    Side side = Side::Upper;
    BoundaryRegime regime = BoundaryRegime::UpperC1LtC2;
    double q0 = 0;
    PiInterval interval;
    // Q-dependent; filled by boundary_solution for the queried Q, empty as
    // produced by q0_upper / q0_lower.
    std::optional<EpsRange> epsilon_range;
};

struct BoundarySolution {
    double r_cor = 0;
    double pbar_cor = 0;
    double q_used = 0;
    Povm barM;
    bool unique = true;
    std::optional<double> epsilon;
    BoundaryCase bc;  // with epsilon_range filled for the queried Q
};

const char* boundary_regime_name(BoundaryRegime regime);

BoundaryCase q0_upper(const DerivedData& d);
BoundaryCase q0_lower(const DerivedData& d);

// Admissible epsilon interval of the POVM family at the given Q, or empty when
// the regime has no free parameter (the POVM is unique).
std::optional<EpsRange> epsilon_range_at(const DerivedData& d, const BoundaryCase& bc, double Q);

BoundarySolution boundary_solution(const DerivedData& d, const BoundaryCase& bc, double Q,
                                   std::optional<double> epsilon = {});

}  // namespace frirq
