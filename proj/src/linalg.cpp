#include "frirq/linalg.hpp"

#include <algorithm>

namespace frirq {

namespace {

// General complex 2x2, used only for intermediate products.
struct Mat2 {
    Cx m00, m01, m10, m11;
};

Mat2 to_mat(const HermitianOp& h) {
    return {Cx(h.a11, 0), h.a12, std::conj(h.a12), Cx(h.a22, 0)};
}

Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

// Phase convention: first nonzero component real and positive.
Ket fix_phase(Ket v) {
    Cx c = (std::abs(v.c0) > 1e-14) ? v.c0 : v.c1;
    double a = std::abs(c);
    if (a == 0.0) return v;
    Cx ph = std::conj(c) / a;
    return {v.c0 * ph, v.c1 * ph};
}

Ket normalized(Ket v) {
    double n = v.norm();
    return {v.c0 / n, v.c1 / n};
}

// Orthogonal complement of a unit vector, before phase fixing.
Ket perp(const Ket& v) {
    return {-std::conj(v.c1), std::conj(v.c0)};
}

}  // namespace

HermitianOp hermitian_in_basis(const Ket& n1, const Ket& n2, double m11, double m22, Cx m12) {
    HermitianOp r = outer(n1) * m11 + outer(n2) * m22;
    // m12|n1><n2| + h.c.
    Cx t00 = m12 * n1.c0 * std::conj(n2.c0);
    Cx t11 = m12 * n1.c1 * std::conj(n2.c1);
    Cx t01 = m12 * n1.c0 * std::conj(n2.c1);
    Cx t10 = m12 * n1.c1 * std::conj(n2.c0);
    r.a11 += 2.0 * std::real(t00);
    r.a22 += 2.0 * std::real(t11);
    r.a12 += t01 + std::conj(t10);
    return r;
}

HermitianOp from_bloch(const BlochVector& v, double weight) {
    return {0.5 * weight * (1.0 + v.z), 0.5 * weight * (1.0 - v.z),
            0.5 * weight * Cx(v.x, -v.y)};
}

std::pair<double, BlochVector> to_bloch(const HermitianOp& h) {
    double t = h.trace();
    double x = 2.0 * std::real(h.a12);
    double y = -2.0 * std::imag(h.a12);
    double z = h.a11 - h.a22;
    if (std::abs(t) < 1e-300) return {t, {0, 0, 0}};
    return {t, {x / t, y / t, z / t}};
}

SpectralPair spectral_2x2(const HermitianOp& h) {
    double m = 0.5 * (h.a11 + h.a22);
    double half_gap = 0.5 * (h.a11 - h.a22);
    double disc = std::sqrt(half_gap * half_gap + std::norm(h.a12));
    SpectralPair sp;
    sp.eval_lo = m - disc;
    sp.eval_hi = m + disc;

    if (disc <= 1e-300) {
        sp.evec_hi = {Cx(1, 0), Cx(0, 0)};
        sp.evec_lo = {Cx(0, 0), Cx(1, 0)};
        return sp;
    }
    // Candidate eigenvectors for eval_hi; pick the better conditioned one.
    Ket cand1{h.a12, Cx(sp.eval_hi - h.a11, 0)};
    Ket cand2{Cx(sp.eval_hi - h.a22, 0), std::conj(h.a12)};
    Ket hi = (cand1.norm() >= cand2.norm()) ? cand1 : cand2;
    sp.evec_hi = fix_phase(normalized(hi));
    sp.evec_lo = fix_phase(perp(sp.evec_hi));
    return sp;
}

HermitianOp spectral_fn(const HermitianOp& h, SpectralFn fn) {
    SpectralPair sp = spectral_2x2(h);
    double lo = sp.eval_lo, hi = sp.eval_hi;
    if (fn == SpectralFn::Sqrt) {
        if (lo < -kTolPsd) throw NotPsd("sqrt of indefinite operator (min eigenvalue " + std::to_string(lo) + ")");
        lo = std::max(lo, 0.0);
    } else {
        if (lo < kTolSing) throw SingularOperator("eigenvalue below singularity threshold: " + std::to_string(lo));
    }
    auto f = [fn](double v) {
        switch (fn) {
            case SpectralFn::Sqrt: return std::sqrt(v);
            case SpectralFn::InvSqrt: return 1.0 / std::sqrt(v);
            case SpectralFn::Inv: return 1.0 / v;
        }
        return v;
    };
    return outer(sp.evec_lo) * f(lo) + outer(sp.evec_hi) * f(hi);
}

HermitianOp congruence(const HermitianOp& x, const HermitianOp& m) {
    Mat2 r = mul(mul(to_mat(x), to_mat(m)), to_mat(x));
    // Hermitian up to rounding; symmetrize.
    return {std::real(r.m00), std::real(r.m11), 0.5 * (r.m01 + std::conj(r.m10))};
}

bool is_psd(const HermitianOp& h, double tol) {
    return min_eigenvalue(h) >= -tol;
}

}  // namespace frirq
