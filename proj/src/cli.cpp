#include "frirq/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "frirq/boundary.hpp"
#include "frirq/errors.hpp"
#include "frirq/json_io.hpp"
#include "frirq/solver.hpp"
#include "frirq/verify.hpp"

namespace frirq::cli {

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_cx(Cx z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

std::string mat_str(const HermitianOp& h) {
    return "[[" + fmt(h.a11) + ", " + fmt_cx(h.a12) + "], [" + fmt_cx(std::conj(h.a12)) +
           ", " + fmt(h.a22) + "]]";
}

double kkt_worst(const KktReport& rep) {
    double w = std::max(rep.completeness_residual, rep.dual_consistency_residual);
    w = std::max(w, std::abs(rep.duality_gap));
    for (int i = 0; i < 3; ++i) {
        w = std::max(w, std::abs(rep.slackness[i]));
        w = std::max(w, -rep.psd_margins[i]);
        w = std::max(w, -rep.dual_psd_margins[i]);
    }
    return w;
}

TwoStateEnsemble demo_ensemble() {
    TwoStateEnsemble ens;
    ens.q1 = 0.4;
    ens.q2 = 0.6;
    ens.rho1 = from_bloch({-0.6, -0.2, -0.7}, 1.0);
    ens.rho2 = from_bloch({-0.6, -0.1, 0.6}, 1.0);
    return ens;
}

int run_analyze(const std::string& file, bool as_json) {
    const TwoStateEnsemble ens = ensemble_from_json_file(file);
    const DerivedData d = derive(ens);
    if (as_json) {
        std::printf("%s\n", analysis_to_json(d).c_str());
        return 0;
    }
    const BoundaryCase lower = q0_lower(d);
    const BoundaryCase upper = q0_upper(d);
    std::printf("%-10s %s\n", "relabeled", d.swapped ? "yes" : "no");
    std::printf("%-10s %s\n", "C1", fmt(d.C1).c_str());
    std::printf("%-10s %s\n", "C2", fmt(d.C2).c_str());
    std::printf("%-10s %s\n", "|rho12|", fmt(std::abs(d.rho12)).c_str());
    std::printf("%-10s %s\n", "rho11", fmt(d.rho11).c_str());
    std::printf("%-10s %s\n", "rho22", fmt(d.rho22).c_str());
    std::printf("%-10s %s\n", "e", fmt(d.e).c_str());
    std::printf("%-10s %s\n", "l", fmt(d.l).c_str());
    std::printf("%-10s %s\n", "chi", d.chi_available ? fmt(d.chi).c_str() : "n/a");
    std::printf("%-10s %s\n", "Q1", fmt(d.Q1()).c_str());
    std::printf("%-10s %s\n", "Q2", fmt(d.Q2()).c_str());
    std::printf("lower: q0 = %s, rates [%s, %s], family %s\n", fmt(lower.q0).c_str(),
                fmt(lower.interval.lo).c_str(), fmt(lower.interval.hi).c_str(),
                boundary_regime_name(lower.regime));
    std::printf("upper: q0 = %s, rates [%s, %s], family %s\n", fmt(upper.q0).c_str(),
                fmt(upper.interval.lo).c_str(), fmt(upper.interval.hi).c_str(),
                boundary_regime_name(upper.regime));
    return 0;
}

int run_solve(const std::string& file, double Q, std::optional<double> epsilon, bool as_json) {
    const TwoStateEnsemble ens = ensemble_from_json_file(file);
    const FrirSolution sol = solve_frir(ens, Q, epsilon);
    if (as_json) {
        std::printf("%s\n", solution_to_json(sol).c_str());
        return 0;
    }
    std::printf("%-9s %s\n", "Q", fmt(sol.Q).c_str());
    std::printf("%-9s %s\n", "R_cor", fmt(sol.R_cor).c_str());
    std::printf("%-9s %s\n", "P_cor", fmt(sol.P_cor).c_str());
    std::printf("%-9s %s\n", "Pbar_cor", fmt(sol.Pbar_cor).c_str());
    std::printf("%-9s %s\n", "q_used", fmt(sol.q_used).c_str());
    std::printf("%-9s %s\n", "regime", regime_name(sol.regime));
    std::printf("%-9s %s\n", "unique", sol.unique ? "yes" : "no");
    std::printf("%-9s %s\n", "epsilon", sol.epsilon ? fmt(*sol.epsilon).c_str() : "n/a");
    for (int i = 0; i < 3; ++i)
        std::printf("M%d: %s\n", i, mat_str(sol.povm[static_cast<size_t>(i)]).c_str());
    return 0;
}

int run_sweep(const std::string& file, int n_q, int n_Q, const std::string& out) {
    const TwoStateEnsemble ens = ensemble_from_json_file(file);
    std::ofstream os(out, std::ios::binary);
    if (!os) throw ParseError("cannot open output file: " + out);
    if (n_q > 0) {
        os << "schema_version,q,P_I,Pbar_cor,lambda1,lambda2,eta0,eta1,eta2,branch\n";
        for (const DegreeRow& r : sweep_q(ens, n_q)) {
            os << "1," << fmt(r.q) << ',' << fmt(r.P_I) << ',' << fmt(r.Pbar_cor) << ','
               << fmt(r.lambda1) << ',' << fmt(r.lambda2) << ',' << fmt(r.eta0) << ','
               << fmt(r.eta1) << ',' << fmt(r.eta2) << ',' << branch_name(r.branch) << '\n';
        }
    } else {
        os << "schema_version,Q,R_cor,P_cor,P_err,q_used,regime\n";
        for (const RateRow& r : sweep_Q(ens, n_Q)) {
            os << "1," << fmt(r.Q) << ',' << fmt(r.R_cor) << ',' << fmt(r.P_cor) << ','
               << fmt(r.P_err) << ',' << fmt(r.q_used) << ',' << regime_name(r.regime) << '\n';
        }
    }
    return 0;
}

int run_verify_stored(const TwoStateEnsemble& ens, const std::string& povm_file) {
    const StoredSolution s = solution_from_json_file(povm_file);
    bool ok = true;

    const HermitianOp sum = s.povm[0] + s.povm[1] + s.povm[2];
    const double comp = max_abs(sum - HermitianOp::identity());
    double worst_margin = 0;
    for (const HermitianOp& m : s.povm)
        worst_margin = std::min(worst_margin, min_eigenvalue(m));
    const bool valid = comp <= 1e-9 && worst_margin >= -1e-9;
    ok = ok && valid;
    std::printf("measurement validity: completeness residual %.2e, min eigenvalue %.2e  %s\n",
                comp, worst_margin, valid ? "ok" : "FAIL");

    const HermitianOp rho0 = ens.rho1 * ens.q1 + ens.rho2 * ens.q2;
    const double Qr = trace_product(rho0, s.povm[0]);
    const double Pr = ens.q1 * trace_product(ens.rho1, s.povm[1]) +
                      ens.q2 * trace_product(ens.rho2, s.povm[2]);
    const double Rr = Pr / (1.0 - Qr);
    const bool q_ok = std::abs(Qr - s.Q) <= 1e-9;
    const bool p_ok = std::abs(Pr - s.P_cor) <= 1e-9;
    const bool r_ok = std::abs(Rr - s.R_cor) <= 1e-9;
    ok = ok && q_ok && p_ok && r_ok;
    std::printf("stored Q     %s  recomputed %s  %s\n", fmt(s.Q).c_str(), fmt(Qr).c_str(),
                q_ok ? "ok" : "FAIL");
    std::printf("stored P_cor %s  recomputed %s  %s\n", fmt(s.P_cor).c_str(), fmt(Pr).c_str(),
                p_ok ? "ok" : "FAIL");
    std::printf("stored R_cor %s  recomputed %s  %s\n", fmt(s.R_cor).c_str(), fmt(Rr).c_str(),
                r_ok ? "ok" : "FAIL");
    std::printf("verdict: %s\n", ok ? "stored measurement reproduces its rates"
                                    : "stored measurement FAILED verification");
    return ok ? 0 : 3;
}

int run_verify(const std::string& file, int n_grid, int n_dirs, long long n_samples,
               unsigned long long seed, const std::string& povm_file) {
    const TwoStateEnsemble ens = ensemble_from_json_file(file);
    if (!povm_file.empty()) return run_verify_stored(ens, povm_file);

    bool ok = true;
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(n_grid));
    for (int i = 0; i < n_grid; ++i) grid.push_back(static_cast<double>(i) / n_grid);

    std::printf("optimality certificate at %d rates:\n", n_grid);
    std::vector<FrirSolution> sols;
    for (double Q : grid) {
        const FrirSolution sol = solve_frir(ens, Q);
        const KktReport rep = check_solution(ens, sol);
        ok = ok && rep.passed;
        std::printf("  Q=%-15s regime=%-22s residual %.2e  %s\n", fmt(Q).c_str(),
                    regime_name(sol.regime), kkt_worst(rep), rep.passed ? "ok" : "FAIL");
        sols.push_back(sol);
    }

    std::printf("linear-program cross-check (%d directions):\n", n_dirs);
    const OracleComparison cmp = compare_oracle(ens, grid, n_dirs);
    for (const OracleRow& row : cmp.rows) {
        const bool row_ok =
            row.status == LpStatus::Optimal && row.gap >= -1e-9 && row.gap <= 1e-3;
        ok = ok && row_ok;
        std::printf("  Q=%-15s analytic %.12f  lp %.12f  gap %+.2e  %s\n", fmt(row.Q).c_str(),
                    row.analytic, row.lp, row.gap,
                    row_ok ? "ok" : (row.status == LpStatus::Optimal ? "FAIL" : lp_status_name(row.status)));
    }

    std::printf("measurement simulation (%lld samples per rate, seed %llu):\n", n_samples, seed);
    for (size_t i = 0; i < grid.size(); ++i) {
        const McResult mc = monte_carlo(ens, sols[i].povm, n_samples, seed + i);
        const double dq = std::abs(mc.empirical_Q - grid[i]);
        const double dr = std::abs(mc.empirical_R_cor - sols[i].R_cor);
        const bool q_ok = dq <= 4.0 * mc.stderr_Q + 1e-12;
        const bool r_ok = !std::isnan(mc.empirical_R_cor) && dr <= 4.0 * mc.stderr_R_cor + 1e-12;
        ok = ok && q_ok && r_ok;
        std::printf("  Q=%-15s |dQ|=%.2e (4sig %.2e)  |dR|=%.2e (4sig %.2e)  %s\n",
                    fmt(grid[i]).c_str(), dq, 4.0 * mc.stderr_Q, dr, 4.0 * mc.stderr_R_cor,
                    q_ok && r_ok ? "ok" : "FAIL");
    }

    std::printf("verdict: %s\n", ok ? "all checks passed" : "verification FAILED");
    return ok ? 0 : 3;
}

int run_demo() {
    const TwoStateEnsemble ens = demo_ensemble();
    const DerivedData d = derive(ens);
    std::printf("built-in example: priors 0.4 / 0.6, bloch vectors "
                "(-0.6, -0.2, -0.7) and (-0.6, -0.1, 0.6)\n\n");
    std::printf("%-9s %-22s %s\n", "", "computed", "expected");
    std::printf("%-9s %-22s %s\n", "|rho12|", fmt(std::abs(d.rho12)).c_str(), "0.3075");
    std::printf("%-9s %-22s %s\n", "C1", fmt(d.C1).c_str(), "0.8361");
    std::printf("%-9s %-22s %s\n", "C2", fmt(d.C2).c_str(), "0.9657");
    std::printf("%-9s %-22s %s\n", "chi", fmt(d.chi).c_str(), "0.6940");
    std::printf("%-9s %-22s %s\n", "Q1", fmt(d.Q1()).c_str(), "0.6635");
    std::printf("\n");
    for (double Q : {0.0, 0.3, 0.62}) {
        const FrirSolution sol = solve_frir(ens, Q);
        std::printf("Q = %-5s R_cor = %-18s regime = %s\n", fmt(Q).c_str(),
                    fmt(sol.R_cor).c_str(), regime_name(sol.regime));
    }
    return 0;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"optimal discrimination of two mixed qubit states at a fixed "
                 "rate of inconclusive results"};
    app.require_subcommand(1);

    std::string a_file;
    bool a_json = false;
    auto* analyze = app.add_subcommand("analyze", "derived scalars and admissible rate intervals");
    analyze->add_option("file", a_file, "ensemble JSON file")->required();
    analyze->add_flag("--json", a_json, "machine-readable output");

    std::string s_file;
    double s_Q = 0;
    double s_eps = 0;
    bool s_json = false;
    auto* solve = app.add_subcommand("solve", "optimal measurement at a given rate");
    solve->add_option("file", s_file, "ensemble JSON file")->required();
    solve->add_option("--Q", s_Q, "rate of inconclusive results in [0, 1)")->required();
    auto* eps_opt = solve->add_option("--epsilon", s_eps, "free parameter of a non-unique family");
    solve->add_flag("--json", s_json, "machine-readable output");

    std::string w_file, w_out;
    int w_nq = 0, w_nQ = 0;
    auto* sweep = app.add_subcommand("sweep", "CSV table over a grid");
    sweep->add_option("file", w_file, "ensemble JSON file")->required();
    sweep->add_option("--q-grid", w_nq, "rows over the dual parameter interval");
    sweep->add_option("--Q-grid", w_nQ, "rows over rates 0, 1/n, ..., (n-1)/n");
    sweep->add_option("--out", w_out, "output CSV path")->required();

    std::string v_file, v_povm;
    int v_grid = 10, v_dirs = 2000;
    long long v_samples = 100000;
    unsigned long long v_seed = 12345;
    auto* verify = app.add_subcommand("verify", "certificates, LP cross-check, simulation");
    verify->add_option("file", v_file, "ensemble JSON file")->required();
    verify->add_option("--Q-grid", v_grid, "number of rates 0, 1/n, ..., (n-1)/n")
        ->check(CLI::PositiveNumber);
    verify->add_option("--directions", v_dirs, "LP direction count");
    verify->add_option("--samples", v_samples, "simulation sample count")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", v_seed, "simulation RNG seed");
    verify->add_option("--povm", v_povm, "re-verify a stored solution file instead");

    auto* demo = app.add_subcommand("demo", "built-in worked example");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*analyze) return run_analyze(a_file, a_json);
        if (*solve) {
            std::optional<double> eps;
            if (eps_opt->count() > 0) eps = s_eps;
            return run_solve(s_file, s_Q, eps, s_json);
        }
        if (*sweep) {
            if ((w_nq > 0) == (w_nQ > 0)) {
                std::fprintf(stderr, "error: pass exactly one of --q-grid or --Q-grid\n");
                return 2;
            }
            return run_sweep(w_file, w_nq, w_nQ, w_out);
        }
        if (*verify) return run_verify(v_file, v_grid, v_dirs, v_samples, v_seed, v_povm);
        if (*demo) return run_demo();
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const InvalidEnsemble& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
    return 0;
}

}  // namespace frirq::cli
