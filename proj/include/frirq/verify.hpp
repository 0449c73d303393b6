#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "frirq/solver.hpp"

namespace frirq {

struct KktReport {
    double completeness_residual = 0;
    std::array<double, 3> psd_margins{};       // min eigenvalue of each barM element
    double dual_consistency_residual = 0;
    std::array<double, 3> slackness{};         // tr[barTau_i barM_i]
    double duality_gap = 0;
    std::array<double, 3> dual_psd_margins{};  // min eigenvalue of each barTau element
    bool passed = false;
};

KktReport check_kkt(const DerivedData& d, double q, const Povm& barM,
                    const std::array<HermitianOp, 3>& barTau, double tol = 1e-9);

// Closed-form dual certificates for the regime's optimum at inconclusive
// degree q, in the barred picture and the derived (possibly relabeled) order.
std::array<HermitianOp, 3> kkt_duals(const DerivedData& d, Regime regime, double q);

KktReport check_solution(const TwoStateEnsemble& ens, const FrirSolution& sol, double tol = 1e-9);

enum class LpStatus { Optimal, Infeasible, IterationLimit };

const char* lp_status_name(LpStatus s);

struct OracleResult {
    double P_cor_lp = 0;
    int n_directions = 0;
    double achieved_Q = 0;
    LpStatus status = LpStatus::Optimal;
};

// Deterministic direction set used by the LP oracle; a prefix of the set for
// n+1 equals the set for n, so enlarging n can only improve the optimum.
std::vector<BlochVector> lp_directions(const TwoStateEnsemble& ens, int n_directions);

OracleResult lp_oracle(const TwoStateEnsemble& ens, double Q, int n_directions);

struct OracleRow {
    double Q = 0;
    double analytic = 0;
    double lp = 0;
    double gap = 0;  // analytic - lp
    LpStatus status = LpStatus::Optimal;
};

struct OracleComparison {
    std::vector<OracleRow> rows;
    double max_gap = 0;
    double min_gap = 0;
    bool all_optimal = true;
};

OracleComparison compare_oracle(const TwoStateEnsemble& ens, const std::vector<double>& Q_grid,
                                int n_directions = 2000);

struct McResult {
    double empirical_Q = 0;
    double empirical_R_cor = 0;
    double stderr_Q = 0;
    double stderr_R_cor = 0;
    std::int64_t n_samples = 0;
    std::int64_t n_inconclusive = 0;
    std::int64_t n_correct = 0;
};

McResult monte_carlo(const TwoStateEnsemble& ens, const Povm& povm, std::int64_t n_samples,
                     std::uint64_t seed);

}  // namespace frirq
