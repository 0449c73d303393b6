#include "frirq/interior.hpp"

#include <cmath>

namespace frirq {

namespace {

constexpr double kTolSqrtClamp = 1e-12;
constexpr double kTolEtaCross = 1e-8;
constexpr double kTolBranch = 1e-12;

struct TwoElementGeom {
    int x;
    BlochVector dir;  // (q v0 - q_x v_x) / L
    double L;
    double qx;
};

TwoElementGeom two_element_geom(const DerivedData& d, double q) {
    double f1 = d.ens.q1 + (q * d.v0 - d.ens.q1 * d.v1).norm();
    double f2 = d.ens.q2 + (q * d.v0 - d.ens.q2 * d.v2).norm();
    TwoElementGeom g;
    g.x = f1 > f2 + kTolBranch ? 1 : 2;
    g.qx = g.x == 1 ? d.ens.q1 : d.ens.q2;
    BlochVector vx = g.x == 1 ? d.v1 : d.v2;
    BlochVector D = q * d.v0 - g.qx * vx;
    g.L = D.norm();
    if (g.L <= kTolSing) throw DomainError("two-element direction vector vanishes");
    g.dir = D / g.L;
    return g;
}

bool is_all_nonzero(const LambdaEta& le) {
    return le.lambda1 >= -kTolSqrtClamp && le.lambda2 >= -kTolSqrtClamp && le.eta0 > kTolSqrtClamp &&
           le.eta1 > kTolSqrtClamp && le.eta2 > kTolSqrtClamp;
}

void assert_vanishing_element(const DerivedData& d, double q, int x) {
    bool x2_forced = d.C1 <= 0.5 + kTolDegenerate || q > d.C1 + kTolBranch;
    if (x2_forced && x == 1)
        throw ConsistencyError("two-element branch kept element 1 where element 2 must survive");
}

}  // namespace

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::AllNonzero: return "all_nonzero";
        case Branch::TwoElementX1: return "two_element_x1";
        case Branch::TwoElementX2: return "two_element_x2";
    }
    return "?";
}

LambdaEta lambdas_etas(const DerivedData& d, double q) {
    if (std::abs(2.0 * q - 1.0) <= 1e-12)
        throw DomainError("interior formulas are singular at q = 1/2");

    const double k1 = 2.0 * d.C1 - 1.0;
    const double k2 = 2.0 * d.C2 - 1.0;
    const double t = 2.0 * q - 1.0;
    const double S = d.C1 + d.C2 - 1.0;
    const double a1 = d.C1 - q, b1 = q - 1.0 + d.C1;
    const double a2 = d.C2 - q, b2 = q - 1.0 + d.C2;

    LambdaEta le;
    le.lambda1 = k2 * a1 * b1 / (t * S);
    le.lambda2 = k1 * a2 * b2 / (t * S);

    const double r = std::abs(d.rho12);
    double prod = k1 * k2 * a1 * b1 * a2 * b2;
    if (prod < 0.0 && prod >= -kTolSqrtClamp) prod = 0.0;
    const double den = std::sqrt(prod);

    const double A1 = (k1 * k2 + 2.0 * (d.C2 - d.C1) * t + t * t) / (2.0 * t * t * S);
    const double off1 = d.rho12_zero ? 0.0 : r * a2 * b1 * (k1 * b2 + k2 * a1) / den;
    le.eta1 = A1 * (d.rho11 * b1 + d.rho22 * a2 - off1);

    const double A2 = (k1 * k2 - 2.0 * (d.C2 - d.C1) * t + t * t) / (2.0 * t * t * S);
    const double off2 = d.rho12_zero ? 0.0 : r * a1 * b2 * (k2 * b1 + k1 * a2) / den;
    le.eta2 = A2 * (d.rho11 * a1 + d.rho22 * b2 - off2);

    le.eta0 = 1.0 - le.eta1 - le.eta2;

    const double A0 = (k1 * k2 - t * t) / (2.0 * t * t * S);
    const double off0 = d.rho12_zero ? 0.0 : r * k1 * k2 * (a1 * a2 + b1 * b2) / den;
    const double eta0_direct = A0 * (1.0 - 2.0 * d.rho11 * d.C1 - 2.0 * d.rho22 * d.C2 + off0);
    if (std::isfinite(le.eta0) && std::isfinite(eta0_direct) &&
        std::abs(le.eta0 - eta0_direct) > kTolEtaCross)
        throw ConsistencyError("eta0 routes disagree beyond tolerance");

    return le;
}

Branch classify_branch(const DerivedData& d, double q) {
    if (is_all_nonzero(lambdas_etas(d, q))) return Branch::AllNonzero;
    auto g = two_element_geom(d, q);
    assert_vanishing_element(d, q, g.x);
    return g.x == 1 ? Branch::TwoElementX1 : Branch::TwoElementX2;
}

InteriorEval interior_eval(const DerivedData& d, double q) {
    InteriorEval ev;
    ev.q = q;

    LambdaEta le = lambdas_etas(d, q);
    ev.lambda1 = le.lambda1;
    ev.lambda2 = le.lambda2;
    ev.eta0 = le.eta0;
    ev.eta1 = le.eta1;
    ev.eta2 = le.eta2;

    if (is_all_nonzero(le)) {
        ev.branch = Branch::AllNonzero;
        const double l1 = le.lambda1, l2 = le.lambda2;
        const double r = std::abs(d.rho12);
        const double s = std::sqrt(std::max(l1 * l2, 0.0));
        const Cx phi = d.rho12_zero ? Cx{0, 0} : d.rho12 / r;

        ev.Pbar_cor = q + d.rho11 * l1 + d.rho22 * l2 - 2.0 * r * s;
        ev.P_I = le.eta0;

        const Cx off = phi * s;
        auto scaled = [&](double eta, double m11, double m22) {
            return hermitian_in_basis(d.nu1, d.nu2, m11, m22, off) * (eta / (m11 + m22));
        };
        ev.barM[0] = scaled(le.eta0, l2, l1);
        ev.barM[1] = scaled(le.eta1, l2 + q - 1.0 + d.C2, l1 + q - d.C1);
        ev.barM[2] = scaled(le.eta2, l2 + q - d.C2, l1 + q - 1.0 + d.C1);
        return ev;
    }

    auto g = two_element_geom(d, q);
    assert_vanishing_element(d, q, g.x);
    ev.branch = g.x == 1 ? Branch::TwoElementX1 : Branch::TwoElementX2;
    ev.Pbar_cor = 0.5 * (q + g.qx + g.L);
    ev.P_I = 0.5 * (1.0 + g.dir.dot(d.v0));

    Povm plain{};
    plain[0] = from_bloch(g.dir, 1.0);
    plain[g.x] = from_bloch(g.dir * -1.0, 1.0);
    plain[3 - g.x] = HermitianOp::zero();
    ev.barM = bar_povm(d, plain);
    ev.barM[3 - g.x] = HermitianOp::zero();
    return ev;
}

}  // namespace frirq
