#pragma once

#include <functional>

#include "canarc/configuration.hpp"

namespace canarc {

/// Adaptively sampled image of wp([z_start, z_end]) on the lattice of
/// `basis`. Endpoints must be points of (1/2)Gamma and the open segment
/// must avoid (1/2)Gamma. Endpoint samples are snapped to the exact
/// root / infinity values.
Polyline sample_arc(Complex z_start, Complex z_end, const LatticeBasis& basis,
                    const SamplingBudget& budget);

/// Flat-metric length of wp([z_start, z_end]): the metric is the pushforward
/// of the Euclidean plane metric, so the length is |z_end - z_start|. A
/// quadrature of the image-side length element sqrt|4(w-e1)(w-e2)(w-e3)|^-1
/// cross-checks the value to 1e-8 before it is returned.
double flat_length(Complex z_start, Complex z_end, const LatticeBasis& basis);

/// Build the canonical configuration for the given points and class:
/// normalize, build the lattice, pick the class-adapted periods, sample
/// both arcs, transport back, attach metadata.
CanonicalConfiguration build_configuration(
    const std::array<SpherePoint, 4>& points, const IsotopyClass& cls,
    const SamplingBudget& budget = {});

/// Same, with an explicit companion coefficient pair (p,q) satisfying
/// r*q - s*p = 1 in place of the minimized companion. Exists so the
/// companion-freedom invariance can be exercised directly.
CanonicalConfiguration build_configuration_with_companion(
    const std::array<SpherePoint, 4>& points, const IsotopyClass& cls,
    std::array<long long, 2> omega2_coeffs, const SamplingBudget& budget = {});

/// Minimal chordal distance between the two arcs' polylines.
double min_arc_separation(const CanonicalConfiguration& config);

} // namespace canarc
