#pragma once

#include <array>
#include <vector>

#include "canarc/mobius.hpp"

namespace canarc {

/// Value of the Weierstrass function and its derivative at one point.
/// Lattice points are poles of both; `is_pole` marks them.
struct WpValue {
    bool is_pole = false;
    Complex p{};
    Complex p_prime{};

    SpherePoint p_point() const {
        return is_pole ? SpherePoint::infinity() : SpherePoint::finite(p);
    }
};

/// Period lattice of the Weierstrass function attached to a root triple.
///
/// The stored generators are label-aligned: wp(omega1_0/2) = e1,
/// wp(omega2_0/2) = e2 and wp((omega1_0+omega2_0)/2) = e3. Evaluation
/// works on an internally cached Gauss-reduced basis of the same lattice,
/// so the nome stays small regardless of how the labels force the stored
/// pair. Immutable after construction.
class LatticeBasis {
public:
    Complex omega1_0() const { return omega1_0_; }
    Complex omega2_0() const { return omega2_0_; }
    Complex tau() const { return omega2_0_ / omega1_0_; }
    const RootTriple& roots() const { return roots_; }

    Complex g2() const { return g2_; }
    Complex g3() const { return g3_; }

    /// Reduced generators used by the evaluator.
    Complex reduced1() const { return red1_; }
    Complex reduced2() const { return red2_; }

    /// Coordinates of z in the stored (omega1_0, omega2_0) basis.
    std::array<double, 2> coords(Complex z) const;
    /// Coordinates of z in the reduced basis.
    std::array<double, 2> reduced_coords(Complex z) const;

private:
    friend LatticeBasis lattice_from_roots(const RootTriple& roots);
    friend WpValue wp_eval(Complex z, const LatticeBasis& basis);

    Complex omega1_0_{}, omega2_0_{};
    Complex red1_{}, red2_{};
    RootTriple roots_{};
    Complex g2_{}, g3_{};
    std::vector<Complex> laurent_; // c_k, k = 2..K
    double lambda_min_ = 0.0;      // |red1_|
};

/// Build the period lattice from a normalized root triple. Half-periods
/// come from R_F(0, e_j - e_k, e_j - e_l); the generator pair is verified
/// against the roots (Eisenstein invariants plus half-period values), so a
/// wrong branch surfaces as LabelingFailure instead of silent corruption.
/// Roots closer than 1e-6 are rejected with RootsTooClose.
LatticeBasis lattice_from_roots(const RootTriple& roots);

/// Representative of z mod the lattice in the fundamental parallelogram
/// of the stored basis centered at 0 (coordinates in [-1/2, 1/2)).
Complex reduce_mod_lattice(Complex z, const LatticeBasis& basis);

/// Weierstrass wp and wp' at z. Total: lattice points yield the pole value.
WpValue wp_eval(Complex z, const LatticeBasis& basis);

/// A solution z of wp(z) = w, computed as R_F(w-e1, w-e2, w-e3) followed by
/// a guarded Newton polish, then normalized to the closed half of the
/// fundamental domain: component along omega2_0 nonnegative, ties broken
/// toward nonnegative omega1_0 component.
Complex wp_invert(const SpherePoint& w, const LatticeBasis& basis);

} // namespace canarc
