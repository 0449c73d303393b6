// End-to-end acceptance suite: one pass/fail line per criterion, exit 1 on
// any failure. Heavier than the unit suites; budgeted for minutes, not ms.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "frirq/solver.hpp"
#include "frirq/verify.hpp"
#include "support.hpp"

using namespace frirq;
using namespace frirq::test;

namespace {

struct Line {
    int n = 0;
    bool ok = false;
    std::string detail;
};

std::vector<Line> g_lines;
std::vector<std::pair<TwoStateEnsemble, FrirSolution>> g_solutions;

void report(int n, bool ok, const std::string& detail) {
    g_lines.push_back({n, ok, detail});
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

FrirSolution keep(const TwoStateEnsemble& ens, double Q) {
    FrirSolution sol = solve_frir(ens, Q);
    g_solutions.emplace_back(ens, sol);
    return sol;
}

Regime canonical(const DerivedData& d, Regime r) {
    if (!d.swapped) return r;
    if (r == Regime::InteriorM1Zero) return Regime::InteriorM2Zero;
    if (r == Regime::InteriorM2Zero) return Regime::InteriorM1Zero;
    return r;
}

void criterion_scalars() {
    const TwoStateEnsemble ens = paper_ensemble();
    DerivedData d = derive(ens);
    double best_us = 1e18;
    for (int i = 0; i < 200; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        d = derive(ens);
        const auto t1 = std::chrono::steady_clock::now();
        best_us = std::min(best_us, std::chrono::duration<double, std::micro>(t1 - t0).count());
    }
    bool ok = best_us < 1000.0;
    ok = ok && std::abs(std::abs(d.rho12) - 0.3075) <= 5e-4;
    ok = ok && std::abs(d.C1 - 0.8361) <= 5e-4;
    ok = ok && std::abs(d.C2 - 0.9657) <= 5e-4;
    ok = ok && std::abs(d.chi - 0.6940) <= 5e-4;
    ok = ok && std::abs(d.Q1() - 0.6635) <= 5e-4;
    report(1, ok,
           "reference scalars |rho12|=" + num(std::abs(d.rho12)) + " C1=" + num(d.C1) +
               " C2=" + num(d.C2) + " chi=" + num(d.chi) + " Q1=" + num(d.Q1()) +
               " within 5e-4; derive " + num(best_us) + " us");
}

void criterion_branch_threshold() {
    const DerivedData d = derive(paper_ensemble());
    double a = d.chi + 1e-9, b = d.C2 - 1e-12;
    for (int i = 0; i < 200 && b - a > 1e-13; ++i) {
        const double mid = 0.5 * (a + b);
        (lambdas_etas(d, mid).eta1 > 0.0 ? a : b) = mid;
    }
    const double q_root = 0.5 * (a + b);
    const double p_root = interior_eval(d, q_root).P_I;
    bool ok = std::abs(q_root - 0.7902) <= 1e-3 && std::abs(p_root - 0.5805) <= 1e-3;

    int mismatches = 0;
    for (int i = 0; i < 500; ++i) {
        const double q = d.chi + (d.C2 - d.chi) * (i + 0.5) / 500.0;
        if (std::abs(q - q_root) <= 1e-9) continue;
        const Branch expect = q < q_root ? Branch::AllNonzero : Branch::TwoElementX2;
        if (classify_branch(d, q) != expect) ++mismatches;
    }
    ok = ok && mismatches == 0;
    report(2, ok,
           "eta1 root at q=" + num(q_root) + " (want 0.7902), threshold P_I=" + num(p_root) +
               " (want 0.5805), " + std::to_string(mismatches) + "/500 grid label mismatches");
}

void criterion_zero_rate_endpoint() {
    const TwoStateEnsemble ens = paper_ensemble();
    const BlochVector w{ens.q1 * -0.6 - ens.q2 * -0.6, ens.q1 * -0.2 - ens.q2 * -0.1,
                        ens.q1 * -0.7 - ens.q2 * 0.6};
    const double l = w.norm();
    const FrirSolution sol = keep(ens, 0.0);
    const bool ok = std::abs(sol.R_cor - 0.5 * (1.0 + l)) <= 1e-12 &&
                    std::abs(sol.R_cor - 0.82573) <= 1e-5 && max_abs(sol.povm[0]) <= 1e-12;
    report(3, ok,
           "R_cor(0)=" + num(sol.R_cor) + " vs (1+l)/2=" + num(0.5 * (1.0 + l)) +
               ", max|M0|=" + num(max_abs(sol.povm[0])));
}

void criterion_closed_form() {
    std::mt19937_64 rng(12345u);
    int mains = 0, subs = 0, tries = 0;
    double worst = 0.0;
    bool ok = true;
    std::string sub_note = "no sub-case instance found";
    while ((mains < 20 || subs < 1) && ++tries < 20000) {
        const auto inst = equal_C_try(rng);
        if (!inst) continue;
        const DerivedData d = derive(inst->ens);
        const double r = std::abs(d.rho12);
        if (inst->kind == EqualCKind::Main && mains < 20) {
            ++mains;
            for (int j = 0; j < 20; ++j) {
                const double Q = 2.0 * r * (j + 1) / 21.0;
                const FrirSolution closed = closed_form_equal_C(inst->ens, Q);
                const FrirSolution iter = keep(inst->ens, Q);
                worst = std::max(worst, std::abs(closed.P_cor - iter.P_cor));
            }
        } else if (inst->kind == EqualCKind::SubA && subs < 1) {
            const double Qm = 2.0 * (d.rho11 * d.rho22 - r * r) / (1.0 - 2.0 * r);
            if (Qm < 1e-4) continue;
            ++subs;
            const FrirSolution below = keep(inst->ens, Qm - 1e-6);
            const FrirSolution above = keep(inst->ens, Qm + 1e-6);
            const bool t_ok = canonical(d, below.regime) == Regime::InteriorAllNonzero &&
                              canonical(d, above.regime) == Regime::InteriorM1Zero;
            ok = ok && t_ok;
            sub_note = std::string("M1=0 transition straddles Qm=") + num(Qm) +
                       (t_ok ? "" : " MISMATCH");
        }
    }
    ok = ok && mains == 20 && subs >= 1 && worst <= 1e-9;
    report(4, ok,
           std::to_string(mains) + " equal-confidence ensembles, worst |closed-iterative| P_cor gap " +
               num(worst) + "; " + sub_note);
}

void criterion_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(5001u);
    std::vector<double> grid;
    for (int j = 0; j < 20; ++j) grid.push_back(j / 20.0);

    bool ok = true;
    double lo = 1e18, hi = -1e18;
    for (int i = 0; i < 50; ++i) {
        const TwoStateEnsemble ens = random_ensemble(rng);
        const OracleComparison cmp = compare_oracle(ens, grid, 2000);
        ok = ok && cmp.all_optimal && cmp.min_gap >= -1e-9 && cmp.max_gap <= 1e-3;
        lo = std::min(lo, cmp.min_gap);
        hi = std::max(hi, cmp.max_gap);
        for (double Q : {0.0, 0.25, 0.5, 0.75}) keep(ens, Q);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && secs < 600.0;
    report(5, ok,
           "50 ensembles x 20 rates at 2000 directions: gaps in [" + num(lo) + ", " + num(hi) +
               "] (allowed [-1e-9, 1e-3]), " + num(secs) + " s");
}

void criterion_certificates() {
    int failures = 0;
    double worst_gap = 0.0;
    for (const auto& [ens, sol] : g_solutions) {
        const KktReport rep = check_solution(ens, sol);
        if (!rep.passed) ++failures;
        worst_gap = std::max(worst_gap, std::abs(rep.duality_gap));
    }
    report(6, failures == 0,
           std::to_string(g_solutions.size()) + " solutions certified, " +
               std::to_string(failures) + " failures, worst |duality gap| " + num(worst_gap));
}

void criterion_invariants() {
    bool ok = true;
    std::string note;

    const auto strict_increase = [](const std::vector<DegreeRow>& rows) {
        for (size_t i = 1; i < rows.size(); ++i) {
            if (!(rows[i].P_I > rows[i - 1].P_I)) return false;
        }
        return true;
    };
    const auto eta_sums = [](const std::vector<DegreeRow>& rows) {
        for (const DegreeRow& r : rows) {
            if (r.branch != Branch::AllNonzero) continue;
            if (std::abs(r.eta0 + r.eta1 + r.eta2 - 1.0) > 1e-10) return false;
        }
        return true;
    };
    const auto nondecreasing_R = [](const std::vector<RateRow>& rows) {
        for (size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].R_cor < rows[i - 1].R_cor - 1e-12) return false;
        }
        return true;
    };

    const auto paper_rows = sweep_q(paper_ensemble(), 1000);
    if (!strict_increase(paper_rows)) { ok = false; note += " P_I not strictly increasing;"; }
    if (!eta_sums(paper_rows)) { ok = false; note += " eta sum off;"; }
    if (!nondecreasing_R(sweep_Q(paper_ensemble(), 50))) { ok = false; note += " R_cor decreased;"; }

    std::mt19937_64 rng(7007u);
    for (int i = 0; i < 100 && ok; ++i) {
        const TwoStateEnsemble ens = random_ensemble(rng);
        const DerivedData d = derive(ens);
        if (q0_lower(d).q0 < 0.5 - 1e-12) { ok = false; note = " q0 lower below 1/2"; break; }
        if (std::abs(q0_upper(d).q0 - d.C2) > 1e-15) { ok = false; note = " q0 upper != C2"; break; }
        if (!d.rho12_zero) {
            const auto rows = sweep_q(ens, 50);
            if (!strict_increase(rows)) { ok = false; note = " P_I not strictly increasing"; break; }
            if (!eta_sums(rows)) { ok = false; note = " eta sum off"; break; }
        }
        if (!nondecreasing_R(sweep_Q(ens, 10))) { ok = false; note = " R_cor decreased"; break; }
        for (double Q : {0.0, 0.35, 0.7}) {
            const FrirSolution sol = keep(ens, Q);
            if (std::abs(sol.P_cor - (sol.Pbar_cor - sol.q_used * sol.Q)) > 1e-9 ||
                std::abs(sol.R_cor * (1.0 - sol.Q) - sol.P_cor) > 1e-12) {
                ok = false;
                note = " rate identity violated";
                break;
            }
        }
    }
    report(7, ok,
           ok ? "monotone P_I and R_cor, eta sums, degree bounds, rate identities on 100 random ensembles"
              : "violated:" + note);
}

void criterion_sampling() {
    const TwoStateEnsemble ens = paper_ensemble();
    bool ok = true;
    std::string note;
    int k = 0;
    for (double Q : {0.0, 0.3, 0.62, 0.8}) {
        const FrirSolution sol = keep(ens, Q);
        const McResult mc = monte_carlo(ens, sol.povm, 1000000, 20260817u + k++);
        const bool q_ok = std::abs(mc.empirical_Q - Q) <= 4.0 * mc.stderr_Q + 1e-12;
        const bool r_ok = std::abs(mc.empirical_R_cor - sol.R_cor) <= 4.0 * mc.stderr_R_cor + 1e-12;
        ok = ok && q_ok && r_ok;
        if (!q_ok || !r_ok) note += " Q=" + num(Q) + " out of band;";
    }
    report(8, ok,
           ok ? "10^6-sample empirical Q and R_cor within 4 standard errors at all four rates"
              : "out of band:" + note);
}

}  // namespace

int main() {
    criterion_scalars();
    criterion_branch_threshold();
    criterion_zero_rate_endpoint();
    criterion_closed_form();
    criterion_oracle();
    criterion_invariants();
    criterion_sampling();
    for (double Q : {0.05, 0.1, 0.3, 0.5, 0.9}) keep(chalf_ensemble(), Q);
    for (double Q : {0.0, 0.15, 0.355, 0.5}) keep(diag_ensemble(0.3, -0.9, 0.8), Q);
    criterion_certificates();

    std::sort(g_lines.begin(), g_lines.end(), [](const Line& a, const Line& b) { return a.n < b.n; });
    bool all_ok = true;
    for (const Line& line : g_lines) {
        std::printf("criterion %d: %s - %s\n", line.n, line.ok ? "PASS" : "FAIL",
                    line.detail.c_str());
        all_ok = all_ok && line.ok;
    }
    return all_ok ? 0 : 1;
}
