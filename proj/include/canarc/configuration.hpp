#pragma once

#include <array>

#include "canarc/elliptic.hpp"
#include "canarc/isotopy.hpp"
#include "canarc/polyline.hpp"

namespace canarc {

/// Refinement budget for arc sampling: refine until consecutive image
/// samples are closer than `h` (chordal) and turn by at most
/// `theta_max_deg`, capped at `max_samples` samples per arc.
struct SamplingBudget {
    double h = 1e-2;
    double theta_max_deg = 5.0;
    int max_samples = 20000;
};

/// The canonical configuration: four marked points, the class, the induced
/// pairing, the lattice data and the two sampled arcs in the original
/// coordinates. `transport` is the normalizing map (original -> normalized).
struct CanonicalConfiguration {
    std::array<SpherePoint, 4> points;
    IsotopyClass cls;
    Pairing pairing = Pairing::P01_23;
    LatticeBasis basis;
    Complex omega1{}, omega2{};
    std::array<long long, 2> omega2_coeffs{0, 1};
    Polyline arc0, arc1;
    double flat_length0 = 0.0, flat_length1 = 0.0;
    double annulus_modulus = 0.0;
    SamplingBudget budget;
    MobiusMap transport;
};

} // namespace canarc
