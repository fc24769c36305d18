#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "canarc/carlson.hpp"
#include "canarc/elliptic.hpp"
#include "support.hpp"

using namespace canarc;
using namespace canarc::testing;

TEST_CASE("carlson_rf: equal arguments give x^(-1/2)") {
    for (const Complex x : {Complex(2.0, 0.0), Complex(0.5, 1.5),
                            Complex(-1.0, 2.0), Complex(3.0, -0.25)}) {
        const Complex val = carlson_rf(x, x, x);
        CHECK(std::abs(val - 1.0 / std::sqrt(x)) < 1e-13 * std::abs(val));
    }
}

TEST_CASE("carlson_rf: RF(0,y,y) = pi/(2 sqrt(y))") {
    for (const Complex y : {Complex(1.0, 0.0), Complex(2.0, 1.0),
                            Complex(0.25, -0.5)}) {
        const Complex val = carlson_rf(Complex(0.0), y, y);
        const Complex expect = std::numbers::pi / (2.0 * std::sqrt(y));
        CHECK(std::abs(val - expect) < 1e-13 * std::abs(expect));
    }
}

TEST_CASE("carlson_rf: RF(0,1,2) matches the quadrature oracle") {
    const double oracle = rf012_quadrature();
    const Complex val = carlson_rf(Complex(0.0), Complex(1.0), Complex(2.0));
    CHECK(std::abs(val.imag()) < 1e-14);
    CHECK(std::abs(val.real() - oracle) < 1e-10);
}

TEST_CASE("carlson_rf: argument validation") {
    CHECK_THROWS_AS(carlson_rf(Complex(0.0), Complex(0.0), Complex(1.0)),
                    Error);
}

TEST_CASE("lemniscatic lattice: square geometry and labels") {
    const LatticeBasis basis = lattice_from_roots(lemniscatic_roots());

    // Real half-period = RF(0,1,2), checked against independent quadrature.
    const Complex half = basis.omega1_0() * 0.5;
    CHECK(std::abs(half.imag()) < 1e-12);
    CHECK(std::abs(half.real() - lemniscatic_period_quadrature()) < 1e-10);
    CHECK(std::abs(half -
                   carlson_rf(Complex(0.0), Complex(1.0), Complex(2.0))) <
          1e-12);

    // The label constraint wp(omega2_0/2) = e2 = 0 forces the diagonal
    // companion: tau = 1 + i for this root ordering (the lattice itself is
    // square).
    CHECK(std::abs(basis.tau() - Complex(1.0, 1.0)) < 1e-10);
    const WpValue at_w2 = wp_eval(basis.omega2_0() * 0.5, basis);
    CHECK(!at_w2.is_pole);
    CHECK(std::abs(at_w2.p) < 1e-9);

    // Reduced basis is the square one.
    CHECK(std::abs(basis.reduced2() / basis.reduced1() - Complex(0.0, 1.0)) <
          1e-10);
}

TEST_CASE("equianharmonic lattice: tau = exp(i pi/3)") {
    const LatticeBasis basis = lattice_from_roots(equianharmonic_roots());
    const Complex expected =
        std::exp(Complex(0.0, std::numbers::pi / 3.0));
    CHECK(std::abs(basis.tau() - expected) < 1e-9);
    const Complex halves[3] = {basis.omega1_0() * 0.5, basis.omega2_0() * 0.5,
                               (basis.omega1_0() + basis.omega2_0()) * 0.5};
    const RootTriple r = equianharmonic_roots();
    const Complex roots[3] = {r.e1, r.e2, r.e3};
    for (int j = 0; j < 3; ++j) {
        const WpValue val = wp_eval(halves[j], basis);
        CHECK(std::abs(val.p - roots[j]) < 1e-9);
        CHECK(std::abs(val.p_prime) < 1e-8);
    }
}

TEST_CASE("roots too close are rejected") {
    CHECK_THROWS_AS(lattice_from_roots(make_roots(
                        {1.0, 0.0}, {1.0 - 1e-8, 0.0}, {-2.0 + 1e-8, 0.0})),
                    Error);
}

TEST_CASE("reduce_mod_lattice basics") {
    const LatticeBasis basis = lattice_from_roots(lemniscatic_roots());
    const Complex z(0.3, 0.2);
    const Complex shifted =
        z + 3.0 * basis.omega1_0() + 2.0 * basis.omega2_0();
    CHECK(std::abs(reduce_mod_lattice(shifted, basis) - z) < 1e-12);
    CHECK(reduce_mod_lattice(Complex(0.0), basis) == Complex(0.0));
    CHECK(std::abs(reduce_mod_lattice(basis.omega1_0(), basis)) == 0.0);
}

TEST_CASE("wp_eval: half-period value, pole normalization, periodicity") {
    const LatticeBasis basis = lattice_from_roots(lemniscatic_roots());

    const WpValue at_half = wp_eval(basis.omega1_0() * 0.5, basis);
    CHECK(std::abs(at_half.p - Complex(1.0)) < 1e-9);
    CHECK(std::abs(at_half.p_prime) < 1e-9);

    // z^2 wp(z) -> 1 at the pole.
    for (const double eps : {1e-2, 1e-3, 1e-4}) {
        const Complex z = eps * basis.omega1_0();
        const WpValue val = wp_eval(z, basis);
        CHECK(std::abs(z * z * val.p - Complex(1.0)) < 1e-3 * eps + 1e-10);
    }
    CHECK(wp_eval(Complex(0.0), basis).is_pole);
    CHECK(wp_eval(basis.omega1_0(), basis).is_pole);

    std::mt19937 rng(99);
    for (int i = 0; i < 50; ++i) {
        const Complex z = random_lattice_point(rng, basis);
        const WpValue a = wp_eval(z, basis);
        if (a.is_pole) continue;
        const WpValue b = wp_eval(z + basis.omega1_0(), basis);
        CHECK(std::abs(a.p - b.p) < 1e-9 * (1.0 + std::abs(a.p)));
    }
}

TEST_CASE("ODE residual across random triples") {
    std::mt19937 rng(20240812);
    for (int t = 0; t < 20; ++t) {
        const RootTriple roots = random_roots(rng);
        const LatticeBasis basis = lattice_from_roots(roots);
        for (int i = 0; i < 50; ++i) {
            const WpValue v =
                wp_eval(random_lattice_point(rng, basis), basis);
            if (v.is_pole) continue;
            const Complex lhs = v.p_prime * v.p_prime;
            const Complex rhs = 4.0 * (v.p - roots.e1) * (v.p - roots.e2) *
                                (v.p - roots.e3);
            const double denom = 1.0 + std::pow(std::abs(v.p), 3);
            CHECK(std::abs(lhs - rhs) / denom < 1e-9);
        }
    }
}

TEST_CASE("evenness and full periodicity") {
    std::mt19937 rng(5);
    const RootTriple roots = random_roots(rng);
    const LatticeBasis basis = lattice_from_roots(roots);
    const Complex periods[3] = {basis.omega1_0(), basis.omega2_0(),
                                basis.omega1_0() + basis.omega2_0()};
    for (int i = 0; i < 60; ++i) {
        const Complex z = random_lattice_point(rng, basis);
        const WpValue a = wp_eval(z, basis);
        const WpValue neg = wp_eval(-z, basis);
        if (a.is_pole || neg.is_pole) continue;
        CHECK(std::abs(a.p - neg.p) < 1e-9 * (1.0 + std::abs(a.p)));
        CHECK(std::abs(a.p_prime + neg.p_prime) <
              1e-9 * (1.0 + std::abs(a.p_prime)));
        const WpValue shifted = wp_eval(z + periods[i % 3], basis);
        CHECK(std::abs(a.p - shifted.p) < 1e-9 * (1.0 + std::abs(a.p)));
    }
}

TEST_CASE("half-period table for stock and random triples") {
    std::mt19937 rng(31);
    std::vector<RootTriple> triples = {real_roots(), lemniscatic_roots(),
                                       equianharmonic_roots()};
    for (int i = 0; i < 8; ++i) triples.push_back(random_roots(rng));
    for (const RootTriple& roots : triples) {
        const LatticeBasis basis = lattice_from_roots(roots);
        const Complex halves[3] = {basis.omega1_0() * 0.5,
                                   basis.omega2_0() * 0.5,
                                   (basis.omega1_0() + basis.omega2_0()) * 0.5};
        const Complex expect[3] = {roots.e1, roots.e2, roots.e3};
        for (int j = 0; j < 3; ++j) {
            const WpValue val = wp_eval(halves[j], basis);
            CHECK(std::abs(val.p - expect[j]) < 1e-9);
        }
    }
}

TEST_CASE("wp_invert: named values") {
    const LatticeBasis basis = lattice_from_roots(lemniscatic_roots());

    // The pole inverts to 0.
    CHECK(wp_invert(SpherePoint::infinity(), basis) == Complex(0.0));

    // w = e2 inverts to omega2_0/2.
    const Complex ze2 = wp_invert(SpherePoint::finite(Complex(0.0)), basis);
    CHECK(std::abs(ze2 - basis.omega2_0() * 0.5) < 1e-9);

    // w = 1 = e1 inverts to the real half-period RF(0,1,2).
    const Complex ze1 = wp_invert(SpherePoint::finite(Complex(1.0)), basis);
    CHECK(std::abs(ze1 - carlson_rf(Complex(0.0), Complex(1.0),
                                    Complex(2.0))) < 1e-9);
}

TEST_CASE("wp_invert round trip on random targets") {
    std::mt19937 rng(123);
    std::normal_distribution<double> gauss(0.0, 1.5);
    std::vector<RootTriple> triples = {real_roots(), lemniscatic_roots(),
                                       equianharmonic_roots(),
                                       random_roots(rng)};
    for (const RootTriple& roots : triples) {
        const LatticeBasis basis = lattice_from_roots(roots);
        for (int i = 0; i < 100; ++i) {
            const SpherePoint w =
                SpherePoint::finite(Complex(gauss(rng), gauss(rng)));
            const Complex z = wp_invert(w, basis);
            const WpValue val = wp_eval(z, basis);
            CHECK(chordal_distance(val.p_point(), w) < 1e-9);

            // Canonical half-domain rule.
            const auto [a, b] = basis.coords(z);
            CHECK(b >= -1e-9);
            if (std::abs(b) <= 1e-12) CHECK(a >= -1e-9);
        }
    }
}
