#include "canarc/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "canarc/carlson.hpp"

namespace canarc {

namespace {

constexpr int kLaurentOrder = 26;
constexpr double kHalveRatio = 0.35;

struct Vec2 {
    long long a = 0, b = 0; // integer coordinates in a working basis
};

std::array<double, 2> coords_in(Complex z, Complex w1, Complex w2) {
    const double det = w1.real() * w2.imag() - w1.imag() * w2.real();
    return {(z.real() * w2.imag() - z.imag() * w2.real()) / det,
            (-z.real() * w1.imag() + z.imag() * w1.real()) / det};
}

// Lagrange-Gauss reduction; returns |g1| <= |g2| with Im(g2/g1) > 0.
void gauss_reduce(Complex& u, Complex& v) {
    for (int iter = 0; iter < 200; ++iter) {
        if (std::norm(v) < std::norm(u)) std::swap(u, v);
        const double m =
            std::round((v * std::conj(u)).real() / std::norm(u));
        if (m == 0.0) break;
        v -= m * u;
        if (std::norm(v) >= std::norm(u)) break;
    }
    if (std::norm(v) < std::norm(u)) std::swap(u, v);
    if ((v / u).imag() < 0.0) v = -v;
}

std::vector<Complex> laurent_coefficients(Complex g2, Complex g3) {
    std::vector<Complex> c(kLaurentOrder + 1, Complex(0.0));
    c[2] = g2 / 20.0;
    c[3] = g3 / 28.0;
    for (int k = 4; k <= kLaurentOrder; ++k) {
        Complex s(0.0);
        for (int m = 2; m <= k - 2; ++m) s += c[m] * c[k - m];
        c[k] = 3.0 * s / double((2 * k + 1) * (k - 3));
    }
    return c;
}

// wp and wp' by the Laurent series; valid for |z| well inside the lattice.
void wp_series(Complex z, const std::vector<Complex>& c, Complex& p,
               Complex& pp) {
    const Complex z2 = z * z;
    p = 1.0 / z2;
    pp = -2.0 / (z2 * z);
    Complex zpow = z2; // z^{2k-2} for k = 2
    for (int k = 2; k <= kLaurentOrder; ++k) {
        p += c[k] * zpow;
        pp += double(2 * k - 2) * c[k] * zpow / z;
        zpow *= z2;
    }
}

// Eisenstein series E4, E6 at tau (Im tau >= sqrt(3)/2 after reduction).
void eisenstein(Complex tau, Complex& e4, Complex& e6) {
    const Complex q = std::exp(Complex(0.0, 2.0 * std::numbers::pi) * tau);
    e4 = 1.0;
    e6 = 1.0;
    Complex qn = q;
    for (int n = 1; n <= 16; ++n) {
        const Complex term = qn / (1.0 - qn);
        const double n2 = double(n) * double(n);
        e4 += 240.0 * (n2 * n) * term;
        e6 -= 504.0 * (n2 * n2 * double(n)) * term;
        qn *= q;
    }
}

struct Engine {
    Complex g1, g2v; // reduced generators
    Complex g2, g3;  // invariants
    const std::vector<Complex>* laurent = nullptr;
    double lambda = 0.0; // |g1|

    WpValue eval(Complex z) const {
        auto [a, b] = coords_in(z, g1, g2v);
        z -= std::floor(a + 0.5) * g1 + std::floor(b + 0.5) * g2v;
        // Nearest lattice translate among the neighbors shortens the
        // halving chain for skew parallelograms.
        Complex best = z;
        for (int i = -1; i <= 1; ++i)
            for (int j = -1; j <= 1; ++j) {
                const Complex cand = z - double(i) * g1 - double(j) * g2v;
                if (std::abs(cand) < std::abs(best)) best = cand;
            }
        z = best;

        WpValue out;
        if (std::abs(z) < 1e-14 * lambda) {
            out.is_pole = true;
            return out;
        }
        int halvings = 0;
        while (std::abs(z) > kHalveRatio * lambda) {
            z *= 0.5;
            ++halvings;
        }
        Complex p, pp;
        wp_series(z, *laurent, p, pp);
        for (int k = 0; k < halvings; ++k) {
            const Complex slope = (6.0 * p * p - g2 * 0.5) / pp;
            const Complex p2 = slope * slope * 0.25 - 2.0 * p;
            pp = -pp - slope * (p2 - p);
            p = p2;
        }
        out.p = p;
        out.p_prime = pp;
        return out;
    }
};

double min_root_gap(const RootTriple& roots) {
    return std::min({std::abs(roots.e1 - roots.e2),
                     std::abs(roots.e1 - roots.e3),
                     std::abs(roots.e2 - roots.e3)});
}

} // namespace

std::array<double, 2> LatticeBasis::coords(Complex z) const {
    return coords_in(z, omega1_0_, omega2_0_);
}

std::array<double, 2> LatticeBasis::reduced_coords(Complex z) const {
    return coords_in(z, red1_, red2_);
}

LatticeBasis lattice_from_roots(const RootTriple& roots) {
    const Complex e1 = roots.e1, e2 = roots.e2, e3 = roots.e3;
    if (min_root_gap(roots) < 1e-6)
        raise(ErrorCode::RootsTooClose,
              "root separation below the 1e-6 conditioning bound");

    const Complex inv_g2 = 2.0 * (e1 * e1 + e2 * e2 + e3 * e3);
    const Complex inv_g3 = 4.0 * e1 * e2 * e3;
    const std::vector<Complex> laurent = laurent_coefficients(inv_g2, inv_g3);

    Complex h1, h2, h3;
    try {
        h1 = carlson_rf(Complex(0.0), e1 - e2, e1 - e3);
        h2 = carlson_rf(Complex(0.0), e2 - e1, e2 - e3);
        h3 = carlson_rf(Complex(0.0), e3 - e1, e3 - e2);
    } catch (const Error&) {
        raise(ErrorCode::LabelingFailure,
              "half-period integrals failed to converge");
    }

    const std::array<std::pair<Complex, Complex>, 8> candidates = {{
        {2.0 * h1, 2.0 * h2},
        {2.0 * h1, 2.0 * h3},
        {2.0 * h2, 2.0 * h3},
        {2.0 * h1, 2.0 * (h2 + h1)},
        {2.0 * h1, 2.0 * (h2 - h1)},
        {2.0 * h2, 2.0 * (h3 + h2)},
        {2.0 * (h1 + h2), 2.0 * h3},
        {2.0 * (h1 - h2), 2.0 * h3},
    }};

    const Complex root_list[3] = {e1, e2, e3};

    for (const auto& [cu, cv] : candidates) {
        Complex u = cu, v = cv;
        if (std::abs(u) == 0.0 || std::abs(v) == 0.0) continue;
        if (std::abs((v / u).imag()) < 1e-10) continue;
        gauss_reduce(u, v);
        const Complex tau_red = v / u;
        if (tau_red.imag() < 0.8) continue; // reduction failed; bad pair

        // The candidate pair generates the right lattice iff its
        // Eisenstein invariants reproduce g2, g3.
        Complex e4, e6;
        eisenstein(tau_red, e4, e6);
        const double pi = std::numbers::pi;
        const Complex u2 = u * u, u4 = u2 * u2;
        const Complex g2_eis = (4.0 / 3.0) * std::pow(pi, 4) * e4 / u4;
        const Complex g3_eis = (8.0 / 27.0) * std::pow(pi, 6) * e6 / (u4 * u2);
        if (std::abs(g2_eis - inv_g2) > 1e-8 * std::max(1.0, std::abs(inv_g2)))
            continue;
        if (std::abs(g3_eis - inv_g3) > 1e-8 * std::max(1.0, std::abs(inv_g3)))
            continue;

        Engine eng;
        eng.g1 = u;
        eng.g2v = v;
        eng.g2 = inv_g2;
        eng.g3 = inv_g3;
        eng.laurent = &laurent;
        eng.lambda = std::abs(u);

        // Label the three half-period classes by evaluation.
        const Complex class_vec[3] = {u, v, u + v};
        int label_of[3] = {-1, -1, -1}; // class index -> root index
        bool ok = true;
        bool used[3] = {false, false, false};
        for (int c = 0; c < 3; ++c) {
            const WpValue val = eng.eval(class_vec[c] * 0.5);
            if (val.is_pole) {
                ok = false;
                break;
            }
            int best = 0;
            double best_d = std::abs(val.p - root_list[0]);
            for (int r = 1; r < 3; ++r) {
                const double d = std::abs(val.p - root_list[r]);
                if (d < best_d) {
                    best_d = d;
                    best = r;
                }
            }
            if (best_d > 1e-9 || used[best]) {
                ok = false;
                break;
            }
            used[best] = true;
            label_of[c] = best;
        }
        if (!ok) continue;

        // Integer coordinates (in the reduced basis) of the vectors whose
        // half-period carries e1 respectively e2.
        const Vec2 class_coords[3] = {{1, 0}, {0, 1}, {1, 1}};
        Vec2 first{}, second{};
        for (int c = 0; c < 3; ++c) {
            if (label_of[c] == 0) first = class_coords[c];
            if (label_of[c] == 1) second = class_coords[c];
        }
        auto value_of = [&](const Vec2& w) {
            return double(w.a) * u + double(w.b) * v;
        };
        // The diagonal class has two short representatives (g1 +- g2);
        // prefer the shorter one (class mod 2*Gamma is the same).
        auto shorten_diag = [&](Vec2 w) {
            if (w.a != 0 && w.b != 0) {
                const Vec2 alt{w.a, -w.b};
                if (std::abs(value_of(alt)) < std::abs(value_of(w)) - 1e-12)
                    return alt;
            }
            return w;
        };
        first = shorten_diag(first);
        second = shorten_diag(second);

        long long det = first.a * second.b - first.b * second.a;
        if (det == -1) {
            second.a = -second.a;
            second.b = -second.b;
            det = 1;
        }
        if (det != 1) continue;

        // Reduce omega2_0 by even multiples of omega1_0 (class-preserving)
        // to the shortest representative; ties toward Re(omega2/omega1) >= 0.
        {
            const Complex w1 = value_of(first);
            const Complex w2 = value_of(second);
            const double k0 = std::round(
                -(w2 * std::conj(w1)).real() / (2.0 * std::norm(w1)));
            Vec2 best = second;
            double best_len = std::abs(value_of(second));
            double best_re = ((value_of(second) / w1)).real();
            for (double k : {k0 - 1.0, k0, k0 + 1.0}) {
                Vec2 cand{second.a + 2 * (long long)k * first.a,
                          second.b + 2 * (long long)k * first.b};
                const Complex cv2 = value_of(cand);
                const double len = std::abs(cv2);
                const double re = (cv2 / w1).real();
                if (len < best_len - 1e-12 * std::abs(w1) ||
                    (len < best_len + 1e-12 * std::abs(w1) && re > best_re)) {
                    best = cand;
                    best_len = len;
                    best_re = re;
                }
            }
            second = best;
        }

        Complex omega1_0 = value_of(first);
        Complex omega2_0 = value_of(second);
        if (omega1_0.real() < 0.0 ||
            (omega1_0.real() == 0.0 && omega1_0.imag() < 0.0)) {
            omega1_0 = -omega1_0;
            omega2_0 = -omega2_0;
        }

        LatticeBasis basis;
        basis.omega1_0_ = omega1_0;
        basis.omega2_0_ = omega2_0;
        basis.red1_ = u;
        basis.red2_ = v;
        basis.roots_ = roots;
        basis.g2_ = inv_g2;
        basis.g3_ = inv_g3;
        basis.laurent_ = laurent;
        basis.lambda_min_ = std::abs(u);

        // Final guard: the stored pair must reproduce the labels.
        const Complex half_list[3] = {omega1_0 * 0.5, omega2_0 * 0.5,
                                      (omega1_0 + omega2_0) * 0.5};
        for (int j = 0; j < 3; ++j) {
            const WpValue val = wp_eval(half_list[j], basis);
            if (val.is_pole || std::abs(val.p - root_list[j]) > 1e-9)
                raise(ErrorCode::LabelingFailure,
                      "half-period labels failed the evaluation check");
        }
        return basis;
    }

    raise(ErrorCode::LabelingFailure,
          "no generator pair matched the root triple");
}

Complex reduce_mod_lattice(Complex z, const LatticeBasis& basis) {
    const auto [a, b] = basis.coords(z);
    return z - std::floor(a + 0.5) * basis.omega1_0() -
           std::floor(b + 0.5) * basis.omega2_0();
}

WpValue wp_eval(Complex z, const LatticeBasis& basis) {
    Engine eng;
    eng.g1 = basis.red1_;
    eng.g2v = basis.red2_;
    eng.g2 = basis.g2_;
    eng.g3 = basis.g3_;
    eng.laurent = &basis.laurent_;
    eng.lambda = basis.lambda_min_;
    return eng.eval(z);
}

Complex wp_invert(const SpherePoint& w, const LatticeBasis& basis) {
    if (w.is_infinity()) return Complex(0.0);
    const Complex wv = w.value();
    const RootTriple& roots = basis.roots();

    Complex args[3] = {wv - roots.e1, wv - roots.e2, wv - roots.e3};
    // All arguments on the negative real ray is the R_F branch-cut
    // configuration; offset the starting guess slightly and let the
    // polish converge to the true target.
    bool degenerate = true;
    for (const Complex& x : args) {
        if (x.real() >= 0.0 || std::abs(x.imag()) > 1e-9 * std::abs(x.real()))
            degenerate = false;
    }
    Complex z;
    try {
        if (degenerate) {
            const Complex wd =
                wv + Complex(0.0, 1e-6 * (1.0 + std::abs(wv)));
            z = carlson_rf(wd - roots.e1, wd - roots.e2, wd - roots.e3);
        } else {
            z = carlson_rf(args[0], args[1], args[2]);
        }
    } catch (const Error&) {
        raise(ErrorCode::InversionFailure, "R_F starting guess unavailable");
    }

    const SpherePoint target = w;
    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 60; ++iter) {
        const WpValue val = wp_eval(z, basis);
        if (val.is_pole) {
            z += 1e-6 * basis.reduced1();
            continue;
        }
        residual = chordal_distance(SpherePoint::finite(val.p), target);
        if (residual < 1e-12) break;
        const Complex f = val.p - wv;
        const Complex second = 6.0 * val.p * val.p - basis.g2() * 0.5;
        const Complex disc = std::sqrt(val.p_prime * val.p_prime -
                                       2.0 * f * second);
        const Complex d1 = val.p_prime + disc;
        const Complex d2 = val.p_prime - disc;
        const Complex den = std::abs(d1) >= std::abs(d2) ? d1 : d2;
        if (std::abs(den) == 0.0) break;
        z += -2.0 * f / den;
    }
    {
        const WpValue val = wp_eval(z, basis);
        residual = chordal_distance(val.p_point(), target);
        if (residual > 1e-9)
            raise(ErrorCode::InversionFailure,
                  "Newton polish did not reach the target value");
    }

    // Canonical representative: reduce, then pick the half of the
    // fundamental domain with nonnegative omega2_0 component (ties toward
    // nonnegative omega1_0 component).
    z = reduce_mod_lattice(z, basis);
    const auto [a, b] = basis.coords(z);
    constexpr double tie = 1e-12;
    if (b < -tie || (std::abs(b) <= tie && a < -tie)) z = -z;
    return z;
}

} // namespace canarc
