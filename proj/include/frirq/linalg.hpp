#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include "frirq/errors.hpp"

namespace frirq {

using Cx = std::complex<double>;

inline constexpr double kTolPsd = 1e-10;
inline constexpr double kTolSing = 1e-12;
inline constexpr double kTolOrth = 1e-12;
inline constexpr double kTolOffdiag = 1e-10;
inline constexpr double kTolDegenerate = 1e-10;

struct BlochVector {
    double x = 0, y = 0, z = 0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }

    BlochVector operator+(const BlochVector& o) const { return {x + o.x, y + o.y, z + o.z}; }
    BlochVector operator-(const BlochVector& o) const { return {x - o.x, y - o.y, z - o.z}; }
    BlochVector operator*(double s) const { return {x * s, y * s, z * s}; }
    BlochVector operator/(double s) const { return {x / s, y / s, z / s}; }
};

inline BlochVector operator*(double s, const BlochVector& v) { return v * s; }

// 2x2 complex Hermitian operator; a21 is implied as conj(a12).
struct HermitianOp {
    double a11 = 0, a22 = 0;
    Cx a12{0, 0};

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - std::norm(a12); }

    HermitianOp operator+(const HermitianOp& o) const { return {a11 + o.a11, a22 + o.a22, a12 + o.a12}; }
    HermitianOp operator-(const HermitianOp& o) const { return {a11 - o.a11, a22 - o.a22, a12 - o.a12}; }
    HermitianOp operator*(double s) const { return {a11 * s, a22 * s, a12 * s}; }

    static HermitianOp identity() { return {1, 1, {0, 0}}; }
    static HermitianOp zero() { return {}; }
};

inline HermitianOp operator*(double s, const HermitianOp& h) { return h * s; }

// Max absolute entry, as a cheap operator norm surrogate for residuals.
inline double max_abs(const HermitianOp& h) {
    return std::max({std::abs(h.a11), std::abs(h.a22), std::abs(h.a12)});
}

inline double min_eigenvalue(const HermitianOp& h) {
    double m = 0.5 * (h.a11 + h.a22);
    double disc = std::sqrt(0.25 * (h.a11 - h.a22) * (h.a11 - h.a22) + std::norm(h.a12));
    return m - disc;
}

inline double max_eigenvalue(const HermitianOp& h) {
    double m = 0.5 * (h.a11 + h.a22);
    double disc = std::sqrt(0.25 * (h.a11 - h.a22) * (h.a11 - h.a22) + std::norm(h.a12));
    return m + disc;
}

// tr[A*B] for Hermitian A, B (always real).
inline double trace_product(const HermitianOp& a, const HermitianOp& b) {
    return a.a11 * b.a11 + a.a22 * b.a22 + 2.0 * std::real(a.a12 * std::conj(b.a12));
}

// Unit 2-component complex vector (kets such as the |nu_i>).
struct Ket {
    Cx c0{0, 0}, c1{0, 0};

    double norm() const { return std::sqrt(std::norm(c0) + std::norm(c1)); }
};

inline Cx inner(const Ket& u, const Ket& w) {
    return std::conj(u.c0) * w.c0 + std::conj(u.c1) * w.c1;
}

// <u|H|w>
inline Cx bra_op_ket(const Ket& u, const HermitianOp& h, const Ket& w) {
    Cx h21 = std::conj(h.a12);
    Cx r0 = h.a11 * w.c0 + h.a12 * w.c1;
    Cx r1 = h21 * w.c0 + h.a22 * w.c1;
    return std::conj(u.c0) * r0 + std::conj(u.c1) * r1;
}

// |v><v|
inline HermitianOp outer(const Ket& v) {
    return {std::norm(v.c0), std::norm(v.c1), v.c0 * std::conj(v.c1)};
}

// m11|n1><n1| + m22|n2><n2| + m12|n1><n2| + conj(m12)|n2><n1| for orthonormal n1, n2.
HermitianOp hermitian_in_basis(const Ket& n1, const Ket& n2, double m11, double m22, Cx m12);

struct SpectralPair {
    double eval_lo = 0, eval_hi = 0;
    Ket evec_lo, evec_hi;
};

enum class SpectralFn { Sqrt, InvSqrt, Inv };

using Povm = std::array<HermitianOp, 3>;

HermitianOp from_bloch(const BlochVector& v, double weight);
std::pair<double, BlochVector> to_bloch(const HermitianOp& h);
SpectralPair spectral_2x2(const HermitianOp& h);
HermitianOp spectral_fn(const HermitianOp& h, SpectralFn fn);
HermitianOp congruence(const HermitianOp& x, const HermitianOp& m);
bool is_psd(const HermitianOp& h, double tol = kTolPsd);

}  // namespace frirq
