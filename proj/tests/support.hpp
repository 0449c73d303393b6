#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "frirq/ensemble.hpp"
#include "frirq/linalg.hpp"

namespace frirq::test {

// Worked example used throughout: priors 0.4 / 0.6, skew non-commuting states.
inline TwoStateEnsemble paper_ensemble() {
    TwoStateEnsemble ens;
    ens.q1 = 0.4;
    ens.q2 = 0.6;
    ens.rho1 = from_bloch({-0.6, -0.2, -0.7}, 1.0);
    ens.rho2 = from_bloch({-0.6, -0.1, 0.6}, 1.0);
    return ens;
}

// Instance with C1 <= 1/2: a strongly skewed prior on a weak state.
inline TwoStateEnsemble chalf_ensemble() {
    TwoStateEnsemble ens;
    ens.q1 = 0.1;
    ens.q2 = 0.9;
    ens.rho1 = from_bloch({0.7681, 0.2831, 0.1394}, 1.0);
    ens.rho2 = from_bloch({-0.2474, -0.1781, -0.521}, 1.0);
    return ens;
}

// Commuting pair: both Bloch vectors on one axis, lengths a and b.
inline TwoStateEnsemble diag_ensemble(double q1, double a, double b) {
    BlochVector ax{0.3, -0.5, 0.81};
    ax = ax / ax.norm();
    TwoStateEnsemble ens;
    ens.q1 = q1;
    ens.q2 = 1.0 - q1;
    ens.rho1 = from_bloch(ax * a, 1.0);
    ens.rho2 = from_bloch(ax * b, 1.0);
    return ens;
}

inline double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline BlochVector random_bloch(std::mt19937_64& rng, double max_norm) {
    for (;;) {
        BlochVector v{2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0};
        if (v.norm() <= max_norm) return v;
    }
}

// Generic mixed pair, filtered away from the near-degenerate corner.
inline TwoStateEnsemble random_ensemble(std::mt19937_64& rng) {
    for (;;) {
        TwoStateEnsemble ens;
        ens.q1 = 0.05 + 0.9 * u01(rng);
        ens.q2 = 1.0 - ens.q1;
        ens.rho1 = from_bloch(random_bloch(rng, 0.98), 1.0);
        ens.rho2 = from_bloch(random_bloch(rng, 0.98), 1.0);
        try {
            const DerivedData d = derive(ens);
            if (d.C1 + d.C2 < 1.005) continue;
        } catch (const Error&) {
            continue;
        }
        return ens;
    }
}

enum class EqualCKind { Main, SubA, SubB };

struct EqualCInstance {
    TwoStateEnsemble ens;
    EqualCKind kind = EqualCKind::Main;
};

// Root-solve the prior so both confidences coincide: tr of the whitened
// weighted state crosses 1 exactly when C1 = C2.
inline std::optional<EqualCInstance> equal_C_try(std::mt19937_64& rng) {
    const BlochVector v1 = random_bloch(rng, 0.985);
    const BlochVector v2 = random_bloch(rng, 0.985);
    const HermitianOp rho1 = from_bloch(v1, 1.0);
    const HermitianOp rho2 = from_bloch(v2, 1.0);

    auto rawdiff = [&](double q1) -> std::optional<double> {
        const HermitianOp rho0 = rho1 * q1 + rho2 * (1.0 - q1);
        if (min_eigenvalue(rho0) < 1e-9) return std::nullopt;
        const HermitianOp w = spectral_fn(rho0, SpectralFn::InvSqrt);
        return congruence(w, rho1 * q1).trace() - 1.0;
    };

    double a = 1e-3, b = 1.0 - 1e-3;
    const auto fa = rawdiff(a), fb = rawdiff(b);
    if (!fa || !fb || !(*fa < 0.0 && *fb > 0.0)) return std::nullopt;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (a + b);
        const auto fm = rawdiff(mid);
        if (!fm) return std::nullopt;
        (*fm < 0.0 ? a : b) = mid;
    }

    EqualCInstance inst;
    inst.ens.q1 = 0.5 * (a + b);
    inst.ens.q2 = 1.0 - inst.ens.q1;
    inst.ens.rho1 = rho1;
    inst.ens.rho2 = rho2;
    try {
        const DerivedData d = derive(inst.ens);
        if (std::abs(d.C2 - d.C1) > 1e-9) return std::nullopt;
        if (d.C1 + d.C2 < 1.02) return std::nullopt;
        const double r = std::abs(d.rho12);
        if (r < 0.03) return std::nullopt;
        if (r <= d.rho11 && r <= d.rho22)
            inst.kind = EqualCKind::Main;
        else if (d.rho11 < r && r <= d.rho22)
            inst.kind = EqualCKind::SubA;
        else
            inst.kind = EqualCKind::SubB;
    } catch (const Error&) {
        return std::nullopt;
    }
    return inst;
}

}  // namespace frirq::test
