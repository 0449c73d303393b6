#pragma once

#include <optional>
#include <vector>

#include "frirq/boundary.hpp"
#include "frirq/interior.hpp"

namespace frirq {

enum class Regime {
    Rho12ZeroEqualC,
    Rho12ZeroInterior,
    Rho12ZeroUpper,
    BoundaryUpper,
    BoundaryLowerHalf,
    BoundaryLowerDiag,
    Helstrom,
    InteriorAllNonzero,
    InteriorM1Zero,
    InteriorM2Zero,
};

const char* regime_name(Regime r);

struct FrirSolution {
    double Q = 0;
    double R_cor = 0;
    double P_cor = 0;
    double Pbar_cor = 0;
    double q_used = 0;
    Povm povm{};  // plain (un-barred), in the caller's state order
    Regime regime = Regime::Helstrom;
    bool unique = true;
    std::optional<double> epsilon;
};

// Row of a sweep over the inconclusive degree q.
struct DegreeRow {
    double q = 0;
    double P_I = 0;
    double Pbar_cor = 0;
    double lambda1 = 0, lambda2 = 0;
    double eta0 = 0, eta1 = 0, eta2 = 0;
    Branch branch = Branch::AllNonzero;
};

// Row of a sweep over the inconclusive-rate constraint Q.
struct RateRow {
    double Q = 0;
    double R_cor = 0;
    double P_cor = 0;
    double P_err = 0;
    double q_used = 0;
    Regime regime = Regime::Helstrom;
};

FrirSolution solve_frir(const TwoStateEnsemble& ens, double Q, std::optional<double> epsilon = {});
FrirSolution solve_rho12_zero(const TwoStateEnsemble& ens, double Q, std::optional<double> epsilon = {});
double invert_failure_probability(const DerivedData& d, double Q);
FrirSolution closed_form_equal_C(const TwoStateEnsemble& ens, double Q);
std::vector<DegreeRow> sweep_q(const TwoStateEnsemble& ens, int n_points);
std::vector<RateRow> sweep_Q(const TwoStateEnsemble& ens, int n_points);

}  // namespace frirq
