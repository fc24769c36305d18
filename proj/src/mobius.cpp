#include "canarc/mobius.hpp"

#include <cmath>

namespace canarc {

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d) {
    const Complex det = a * d - b * c;
    if (std::abs(det) == 0.0)
        raise(ErrorCode::InvalidArguments, "Moebius map with zero determinant");
    const Complex s = std::sqrt(det);
    a_ = a / s;
    b_ = b / s;
    c_ = c / s;
    d_ = d / s;
}

MobiusMap MobiusMap::inverse() const {
    MobiusMap inv;
    inv.a_ = d_;
    inv.b_ = -b_;
    inv.c_ = -c_;
    inv.d_ = a_;
    return inv;
}

MobiusMap MobiusMap::compose(const MobiusMap& inner) const {
    return MobiusMap(a_ * inner.a_ + b_ * inner.c_,
                     a_ * inner.b_ + b_ * inner.d_,
                     c_ * inner.a_ + d_ * inner.c_,
                     c_ * inner.b_ + d_ * inner.d_);
}

namespace {

// Map sending (z1, z2, z3) to (0, 1, infinity):
//   z -> ((z - z1)(z2 - z3)) / ((z - z3)(z2 - z1)),
// with the usual degenerations when one input is infinity.
MobiusMap to_standard_triple(const SpherePoint& z1, const SpherePoint& z2,
                             const SpherePoint& z3) {
    if (z1.is_infinity()) {
        const Complex p2 = z2.value(), p3 = z3.value();
        return MobiusMap(Complex(0.0), p2 - p3, Complex(1.0), -p3);
    }
    if (z2.is_infinity()) {
        const Complex p1 = z1.value(), p3 = z3.value();
        return MobiusMap(Complex(1.0), -p1, Complex(1.0), -p3);
    }
    if (z3.is_infinity()) {
        const Complex p1 = z1.value(), p2 = z2.value();
        return MobiusMap(Complex(1.0), -p1, Complex(0.0), p2 - p1);
    }
    const Complex p1 = z1.value(), p2 = z2.value(), p3 = z3.value();
    return MobiusMap(p2 - p3, -p1 * (p2 - p3), p2 - p1, -p3 * (p2 - p1));
}

} // namespace

MobiusMap MobiusMap::through(const SpherePoint& z1, const SpherePoint& z2,
                             const SpherePoint& z3, const SpherePoint& w1,
                             const SpherePoint& w2, const SpherePoint& w3) {
    const MobiusMap A = to_standard_triple(z1, z2, z3);
    const MobiusMap B = to_standard_triple(w1, w2, w3);
    return B.inverse().compose(A);
}

SpherePoint mobius_apply(const MobiusMap& map, const SpherePoint& p) {
    if (p.is_infinity()) {
        if (map.c() == Complex(0.0)) return SpherePoint::infinity();
        return SpherePoint::finite(map.a() / map.c());
    }
    const Complex z = p.value();
    const Complex den = map.c() * z + map.d();
    if (den == Complex(0.0)) return SpherePoint::infinity();
    const Complex w = (map.a() * z + map.b()) / den;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        return SpherePoint::infinity();
    return SpherePoint::finite(w);
}

MobiusMap mobius_invert(const MobiusMap& map) { return map.inverse(); }

std::pair<MobiusMap, RootTriple>
normalize_quadruple(const SpherePoint& a0, const SpherePoint& a1,
                    const SpherePoint& a2, const SpherePoint& a3) {
    const SpherePoint pts[4] = {a0, a1, a2, a3};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (chordal_distance(pts[i], pts[j]) <= 1e-12)
                raise(ErrorCode::DuplicatePoints,
                      "points " + std::to_string(i) + " and " +
                          std::to_string(j) + " coincide");

    // Inversion about a0 (skipped when a0 is already at infinity).
    MobiusMap inv;
    if (!a0.is_infinity())
        inv = MobiusMap(Complex(0.0), Complex(1.0), Complex(1.0), -a0.value());

    Complex b[3];
    const SpherePoint others[3] = {a1, a2, a3};
    for (int j = 0; j < 3; ++j) b[j] = mobius_apply(inv, others[j]).value();

    const Complex mean = (b[0] + b[1] + b[2]) / 3.0;
    Complex c[3];
    double max_mod = 0.0;
    for (int j = 0; j < 3; ++j) {
        c[j] = b[j] - mean;
        max_mod = std::max(max_mod, std::abs(c[j]));
    }
    const Complex scale(1.0 / max_mod, 0.0);

    const MobiusMap center(Complex(1.0), -mean, Complex(0.0), Complex(1.0));
    const MobiusMap scaling(scale, Complex(0.0), Complex(0.0), Complex(1.0));
    const MobiusMap T = scaling.compose(center).compose(inv);

    RootTriple roots;
    roots.e1 = c[0] * scale;
    roots.e2 = c[1] * scale;
    roots.e3 = c[2] * scale;
    roots.scale = scale;
    return {T, roots};
}

} // namespace canarc
