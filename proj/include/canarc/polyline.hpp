#pragma once

#include <vector>

#include "canarc/sphere.hpp"

namespace canarc {

/// Sampled arc on the sphere. Open by construction; consecutive samples
/// are distinct and infinity appears only as an explicit sample.
struct Polyline {
    std::vector<SpherePoint> samples;
    bool closed = false;

    std::size_t size() const { return samples.size(); }
    const SpherePoint& front() const { return samples.front(); }
    const SpherePoint& back() const { return samples.back(); }
};

/// Coarser copy keeping endpoints, infinity samples and enough interior
/// samples that consecutive chordal gaps stay near `gap`.
Polyline downsample_polyline(const Polyline& arc, double gap);

} // namespace canarc
