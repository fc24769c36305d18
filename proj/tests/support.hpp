#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "canarc/elliptic.hpp"

namespace canarc::testing {

// Adaptive Simpson quadrature; the independent oracle for the elliptic
// integrals. f must be smooth on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol) {
    struct Rec {
        const std::function<double(double)>& f;
        double run(double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) const {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return run(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
                   run(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
        }
    } rec{f};
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec.run(a, b, fa, fm, fb, whole, tol, 0);
}

// int_1^inf dt / sqrt(4 t (t^2 - 1)), the real half-period of the
// lemniscatic triple, transformed twice to a smooth finite-interval
// integrand: t = 1/s^2 gives int_0^1 ds/sqrt(1-s^4), then s = 1 - w^2
// removes the endpoint singularity.
inline double lemniscatic_period_quadrature(double tol = 1e-13) {
    return adaptive_simpson(
        [](double w) {
            const double s = 1.0 - w * w;
            return 2.0 / std::sqrt((1.0 + s) * (1.0 + s * s));
        },
        0.0, 1.0, tol);
}

// (1/2) int_0^inf dt / sqrt(t (t+1) (t+2)) via t = u^2 on [0,1] and
// t = 1/s^2 on [1, inf): both pieces are smooth.
inline double rf012_quadrature(double tol = 1e-13) {
    const double lower = adaptive_simpson(
        [](double u) {
            return 1.0 / std::sqrt((u * u + 1.0) * (u * u + 2.0));
        },
        0.0, 1.0, tol);
    const double upper = adaptive_simpson(
        [](double s) {
            return 1.0 / std::sqrt((1.0 + s * s) * (1.0 + 2.0 * s * s));
        },
        0.0, 1.0, tol);
    return lower + upper;
}

inline RootTriple make_roots(Complex e1, Complex e2, Complex e3) {
    RootTriple r;
    r.e1 = e1;
    r.e2 = e2;
    r.e3 = e3;
    r.scale = Complex(1.0, 0.0);
    return r;
}

// Stock geometries used across the suites.
inline RootTriple real_roots() {
    return make_roots({1.0, 0.0}, {-2.0 / 7.0, 0.0}, {-5.0 / 7.0, 0.0});
}
inline RootTriple lemniscatic_roots() {
    return make_roots({1.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0});
}
inline RootTriple equianharmonic_roots() {
    const double c = -0.5, s = std::sqrt(3.0) / 2.0;
    return make_roots({1.0, 0.0}, {c, -s}, {c, s});
}

// Random centered unit-scaled root triple with comfortable separation.
inline RootTriple random_roots(std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        Complex e1(gauss(rng), gauss(rng));
        Complex e2(gauss(rng), gauss(rng));
        Complex e3 = -e1 - e2;
        const double scale =
            std::max({std::abs(e1), std::abs(e2), std::abs(e3)});
        if (scale == 0.0) continue;
        e1 /= scale;
        e2 /= scale;
        e3 /= scale;
        const double gap = std::min({std::abs(e1 - e2), std::abs(e1 - e3),
                                     std::abs(e2 - e3)});
        if (gap < 5e-2) continue;
        return make_roots(e1, e2, e3);
    }
}

// Random point of the fundamental parallelogram scaled outward a little.
inline Complex random_lattice_point(std::mt19937& rng,
                                    const LatticeBasis& basis) {
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    return uni(rng) * basis.omega1_0() + uni(rng) * basis.omega2_0();
}

} // namespace canarc::testing
