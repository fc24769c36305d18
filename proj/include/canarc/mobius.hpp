#pragma once

#include <array>

#include "canarc/sphere.hpp"

namespace canarc {

/// Moebius transformation z -> (az + b)/(cz + d), stored with ad - bc
/// normalized to 1 (either square root; the induced sphere map is the same).
class MobiusMap {
public:
    MobiusMap() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}
    MobiusMap(Complex a, Complex b, Complex c, Complex d);

    static MobiusMap identity() { return MobiusMap(); }

    /// The transformation sending z1,z2,z3 to w1,w2,w3 (points pairwise
    /// distinct on each side; infinity allowed).
    static MobiusMap through(const SpherePoint& z1, const SpherePoint& z2,
                             const SpherePoint& z3, const SpherePoint& w1,
                             const SpherePoint& w2, const SpherePoint& w3);

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    MobiusMap inverse() const;
    MobiusMap compose(const MobiusMap& inner) const; // this after inner

    bool is_identity() const {
        return (a_ == Complex(1.0) && b_ == Complex(0.0) &&
                c_ == Complex(0.0) && d_ == Complex(1.0)) ||
               (a_ == Complex(-1.0) && b_ == Complex(0.0) &&
                c_ == Complex(0.0) && d_ == Complex(-1.0));
    }

private:
    Complex a_, b_, c_, d_;
};

SpherePoint mobius_apply(const MobiusMap& map, const SpherePoint& p);
MobiusMap mobius_invert(const MobiusMap& map);

/// The three finite roots after normalization: e1 + e2 + e3 = 0 and
/// max |e_j| = 1. `scale` is the factor applied after the inversion and
/// centering steps (e_j = scale * centered_j).
struct RootTriple {
    Complex e1, e2, e3;
    Complex scale;

    Complex root(int j) const { return j == 0 ? e1 : (j == 1 ? e2 : e3); }
};

/// Reduce four distinct sphere points to the normalized form
/// (infinity, e1, e2, e3): T = scaling o centering o inversion-about-a0,
/// T(a0) = infinity, T(a_j) = e_j for j = 1..3.
/// Throws DuplicatePoints when two inputs are closer than chordal 1e-12.
std::pair<MobiusMap, RootTriple>
normalize_quadruple(const SpherePoint& a0, const SpherePoint& a1,
                    const SpherePoint& a2, const SpherePoint& a3);

} // namespace canarc
