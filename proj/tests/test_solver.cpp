#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "frirq/interior.hpp"
#include "frirq/solver.hpp"
#include "support.hpp"

using namespace frirq;
using namespace frirq::test;

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

void check_solution_posts(const TwoStateEnsemble& ens, const FrirSolution& sol) {
    const HermitianOp rho0 = ens.rho1 * ens.q1 + ens.rho2 * ens.q2;
    const HermitianOp sum = sol.povm[0] + sol.povm[1] + sol.povm[2];
    CHECK(max_abs(sum - HermitianOp::identity()) <= 1e-9);
    for (const HermitianOp& m : sol.povm) CHECK(min_eigenvalue(m) >= -1e-9);

    CHECK(near(trace_product(rho0, sol.povm[0]), sol.Q, 1e-9));
    const double success = ens.q1 * trace_product(ens.rho1, sol.povm[1]) +
                           ens.q2 * trace_product(ens.rho2, sol.povm[2]);
    CHECK(near(success, sol.P_cor, 1e-9));
    CHECK(near(sol.P_cor, sol.R_cor * (1.0 - sol.Q), 1e-12));
    CHECK(near(sol.P_cor, sol.Pbar_cor - sol.q_used * sol.Q, 1e-9));
}

}  // namespace

TEST_CASE("worked example across its regimes") {
    const TwoStateEnsemble ens = paper_ensemble();
    const DerivedData d = derive(ens);

    FrirSolution sol = solve_frir(ens, 0.0);
    CHECK(sol.regime == Regime::Helstrom);
    CHECK(near(sol.R_cor, 0.8257299494980466, 1e-10));
    CHECK(near(sol.q_used, d.chi, 1e-12));
    CHECK(max_abs(sol.povm[0]) <= 1e-12);
    CHECK(sol.unique);
    check_solution_posts(ens, sol);

    sol = solve_frir(ens, 0.3);
    CHECK(sol.regime == Regime::InteriorAllNonzero);
    CHECK(near(sol.R_cor, 0.8737754701064537, 1e-10));
    CHECK(near(sol.q_used, 0.7367844166684854, 1e-8));
    CHECK(sol.unique);
    check_solution_posts(ens, sol);

    sol = solve_frir(ens, 0.45);
    CHECK(near(sol.R_cor, 0.9072316254776245, 1e-10));
    check_solution_posts(ens, sol);

    sol = solve_frir(ens, 0.62);
    CHECK(sol.regime == Regime::InteriorM1Zero);
    CHECK(near(sol.R_cor, 0.9597558484623532, 1e-10));
    CHECK(near(sol.q_used, 0.8655891192576826, 1e-8));
    CHECK(max_abs(sol.povm[1]) <= 1e-10);
    check_solution_posts(ens, sol);

    sol = solve_frir(ens, 0.8);
    CHECK(sol.regime == Regime::BoundaryUpper);
    CHECK(near(sol.R_cor, d.C2, 1e-12));
    REQUIRE(sol.epsilon.has_value());
    CHECK(near(*sol.epsilon, d.rho11, 1e-12));
    check_solution_posts(ens, sol);
}

TEST_CASE("skewed-prior instance across its regimes") {
    const TwoStateEnsemble ens = chalf_ensemble();
    const DerivedData d = derive(ens);

    FrirSolution sol = solve_frir(ens, 0.05);
    CHECK(sol.regime == Regime::BoundaryLowerHalf);
    CHECK(near(sol.R_cor, 0.9109584841498498, 1e-10));
    check_solution_posts(ens, sol);

    sol = solve_frir(ens, 0.3);
    CHECK(sol.regime == Regime::InteriorM1Zero);
    CHECK(near(sol.R_cor, 0.9833027486607054, 1e-10));
    CHECK(near(sol.q_used, 0.8906587959900796, 1e-8));
    check_solution_posts(ens, sol);

    sol = solve_frir(ens, 0.9);
    CHECK(sol.regime == Regime::BoundaryUpper);
    CHECK(near(sol.R_cor, d.C2, 1e-12));
    check_solution_posts(ens, sol);
}

TEST_CASE("commuting pair and its dedicated solver") {
    const TwoStateEnsemble ens = diag_ensemble(0.3, -0.9, 0.8);
    const DerivedData d = derive(ens);

    FrirSolution sol = solve_frir(ens, 0.0);
    CHECK(sol.regime == Regime::Rho12ZeroInterior);
    CHECK(near(sol.R_cor, 0.915, 1e-12));
    check_solution_posts(ens, sol);

    sol = solve_frir(ens, 0.1775);
    CHECK(near(sol.R_cor, 0.9392097264437691, 1e-12));
    check_solution_posts(ens, sol);

    sol = solve_frir(ens, 0.5);
    CHECK(sol.regime == Regime::Rho12ZeroUpper);
    CHECK(near(sol.R_cor, d.C2, 1e-12));
    check_solution_posts(ens, sol);

    const FrirSolution direct = solve_rho12_zero(ens, 0.1775);
    CHECK(near(direct.R_cor, 0.9392097264437691, 1e-12));

    const double seam = d.rho11;
    const FrirSolution below = solve_frir(ens, seam - 1e-9);
    const FrirSolution above = solve_frir(ens, seam + 1e-9);
    CHECK(near(below.R_cor, above.R_cor, 1e-6));

    CHECK_THROWS_AS(solve_rho12_zero(paper_ensemble(), 0.1), NotApplicable);
}

TEST_CASE("relabeled input gives the same rates with exchanged outcomes") {
    const TwoStateEnsemble fwd = paper_ensemble();
    TwoStateEnsemble rev;
    rev.q1 = fwd.q2;
    rev.q2 = fwd.q1;
    rev.rho1 = fwd.rho2;
    rev.rho2 = fwd.rho1;

    const FrirSolution a = solve_frir(fwd, 0.3);
    const FrirSolution b = solve_frir(rev, 0.3);
    CHECK(near(a.R_cor, b.R_cor, 1e-12));
    CHECK(max_abs(a.povm[0] - b.povm[0]) <= 1e-10);
    CHECK(max_abs(a.povm[1] - b.povm[2]) <= 1e-10);
    CHECK(max_abs(a.povm[2] - b.povm[1]) <= 1e-10);
    check_solution_posts(rev, b);

    const FrirSolution c = solve_frir(rev, 0.62);
    CHECK(c.regime == Regime::InteriorM2Zero);
    CHECK(max_abs(c.povm[2]) <= 1e-10);
}

TEST_CASE("failure probability inversion") {
    const DerivedData d = derive(paper_ensemble());
    const double q = invert_failure_probability(d, 0.3);
    CHECK(near(interior_eval(d, q).P_I, 0.3, 1e-9));

    CHECK_THROWS_AS(invert_failure_probability(d, 0.0), BracketFailure);
    CHECK_THROWS_AS(invert_failure_probability(d, 0.7), BracketFailure);

    const DerivedData dd = derive(diag_ensemble(0.3, -0.9, 0.8));
    CHECK_THROWS_AS(invert_failure_probability(dd, 0.1), NotApplicable);
}

TEST_CASE("closed form for coinciding confidences") {
    CHECK_THROWS_AS(closed_form_equal_C(paper_ensemble(), 0.1), NotApplicable);

    std::mt19937_64 rng(12345u);
    int mains = 0;
    while (mains < 4) {
        const auto inst = equal_C_try(rng);
        if (!inst || inst->kind != EqualCKind::Main) continue;
        ++mains;
        const DerivedData d = derive(inst->ens);
        const double top = 2.0 * std::abs(d.rho12);
        for (int j = 0; j < 10; ++j) {
            const double Q = top * (j + 1) / 11.0;
            const FrirSolution closed = closed_form_equal_C(inst->ens, Q);
            const FrirSolution iter = solve_frir(inst->ens, Q);
            CHECK(near(closed.P_cor, iter.P_cor, 1e-9));
            CHECK(near(closed.q_used, iter.q_used, 1e-7));
            check_solution_posts(inst->ens, closed);
        }
        CHECK_THROWS_AS(closed_form_equal_C(inst->ens, top + 1e-3), NotApplicable);
        const FrirSolution at_zero = closed_form_equal_C(inst->ens, 0.0);
        CHECK(near(at_zero.R_cor, solve_frir(inst->ens, 0.0).R_cor, 1e-10));
    }
}

TEST_CASE("rate sweep is monotone and self-consistent") {
    const std::vector<RateRow> rows = sweep_Q(paper_ensemble(), 20);
    REQUIRE(rows.size() == 20);
    CHECK(rows[0].regime == Regime::Helstrom);
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(near(rows[i].Q, static_cast<double>(i) / 20.0, 1e-15));
        CHECK(near(rows[i].P_err, 1.0 - rows[i].Q - rows[i].P_cor, 1e-12));
        if (i > 0) CHECK(rows[i].R_cor >= rows[i - 1].R_cor - 1e-12);
    }
}

TEST_CASE("dual-parameter sweep is strictly increasing in failure probability") {
    const std::vector<DegreeRow> rows = sweep_q(paper_ensemble(), 40);
    REQUIRE(rows.size() == 40);
    int transitions = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) {
            CHECK(rows[i].P_I > rows[i - 1].P_I);
            if (rows[i].branch != rows[i - 1].branch) ++transitions;
        }
    }
    CHECK(transitions == 1);
    CHECK(rows.front().branch == Branch::AllNonzero);
    CHECK(rows.back().branch == Branch::TwoElementX2);

    CHECK_THROWS_AS(sweep_q(diag_ensemble(0.3, -0.9, 0.8), 10), NotApplicable);
    CHECK_THROWS_AS(sweep_q(paper_ensemble(), 1), DomainError);
}

TEST_CASE("epsilon plumbing through the solver") {
    const TwoStateEnsemble ens = paper_ensemble();
    const DerivedData d = derive(ens);
    CHECK_THROWS_AS(solve_frir(ens, 0.8, 0.2), EpsilonOutOfRange);
    const FrirSolution sol = solve_frir(ens, 0.8, d.rho11);
    CHECK(near(sol.R_cor, d.C2, 1e-12));
    CHECK_THROWS_AS(solve_frir(ens, 0.3, 0.1), EpsilonOutOfRange);
}

TEST_CASE("rates outside the unit interval are rejected") {
    CHECK_THROWS_AS(solve_frir(paper_ensemble(), -0.1), QOutOfRange);
    CHECK_THROWS_AS(solve_frir(paper_ensemble(), 1.0), QOutOfRange);
    CHECK_THROWS_AS(solve_frir(paper_ensemble(), 1.5), QOutOfRange);
}

TEST_CASE("regime names") {
    CHECK(std::string(regime_name(Regime::Helstrom)) == "helstrom");
    CHECK(std::string(regime_name(Regime::InteriorAllNonzero)) == "interior_all_nonzero");
    CHECK(std::string(regime_name(Regime::BoundaryUpper)) == "boundary_upper");
    CHECK(std::string(regime_name(Regime::Rho12ZeroEqualC)) == "rho12_zero_equal_C");
}
