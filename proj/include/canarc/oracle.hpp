#pragma once

#include <optional>

#include "canarc/configuration.hpp"

namespace canarc {

/// Discrete Riemann map of the complement of a polyline arc onto the upper
/// half plane, built zipper-style: a base map opening the first segment
/// followed by one elementary slit map per remaining node. The represented
/// map is exact for an arc interpolating the same nodes; accuracy improves
/// under node refinement.
class DiscreteRiemannMap {
public:
    /// Forward map: complement of the arc -> upper half plane.
    Complex map(const SpherePoint& p) const;
    /// Inverse map: upper half plane -> complement of the arc.
    SpherePoint unmap(Complex w) const;
    /// Inverse map with a validity flag: false when the chain lost the
    /// point to rounding (non-finite intermediates).
    std::pair<SpherePoint, bool> unmap_checked(Complex w) const;

    /// Boundary images of the arc endpoints (the marked points of the
    /// model domain): the unzip tip always lands at 0, the far endpoint
    /// on the real axis or at infinity.
    SpherePoint far_endpoint_image() const { return far_image_; }
    Complex tip_endpoint_image() const { return {0.0, 0.0}; }

    std::size_t elementary_map_count() const { return slits_.size() + 1; }

private:
    friend DiscreteRiemannMap unzip_arc(const Polyline& arc);

    struct Slit {
        double invb = 0.0; // 1/b, b = second real intersection of the slit
                           // circle; 0 means a vertical slit (no Moebius)
        double h = 0.0;    // height of the straightened slit
    };

    MobiusMap pre_;            // moves infinity off the arc when needed
    bool has_pre_ = false;
    Complex w0_{}, w1_{};      // first two nodes (after pre_)
    std::vector<Slit> slits_;
    SpherePoint far_image_;
};

/// Unzip a simple polyline arc (>= 2 samples). Arcs through infinity are
/// moved off infinity by a deterministic preliminary Moebius map.
DiscreteRiemannMap unzip_arc(const Polyline& arc);

/// Hyperbolic geodesic between p and q in the complement of `arc`:
/// map through unzip_arc, take the half-plane geodesic, sample
/// `resolution` points, pull back. Endpoint samples are p and q exactly.
Polyline geodesic_in_complement(const Polyline& arc, const SpherePoint& p,
                                const SpherePoint& q, int resolution);

/// Symmetric Hausdorff distance between the polylines in the chordal
/// metric, with segment-interpolation refinement.
double chordal_hausdorff(const Polyline& a, const Polyline& b);

/// Minimal chordal distance between two polylines.
double chordal_min_distance(const Polyline& a, const Polyline& b);

/// Chordal distance from each point to the polyline (shared spatial index).
std::vector<double> distances_to_polyline(const std::vector<SpherePoint>& pts,
                                          const Polyline& arc);

struct InvolutionResiduals {
    double fix_residual = 0.0;   // max displacement of own-arc samples
    double idem_residual = 0.0;  // max |sigma(sigma(w)) - w| over probes
    double image_clearance = 0.0; // min distance of probe images to the slit arc
};

/// Residuals of the two anti-conformal involutions realized through the
/// lattice: sigma_k reflects lifts across the line of gamma_k and maps
/// back down. Returns the per-arc maxima combined.
std::pair<InvolutionResiduals, InvolutionResiduals>
involution_residuals(const CanonicalConfiguration& config);

struct VerificationReport {
    double tol = 0.0;
    int resolution = 0;
    double sampling_h = 0.0;
    std::array<double, 2> geodesic_distance{0.0, 0.0};
    std::array<bool, 2> arc_pass{false, false};
    std::array<double, 2> fix_residual{0.0, 0.0};
    std::array<double, 2> idem_residual{0.0, 0.0};
    std::array<double, 2> image_clearance{0.0, 0.0};
    double disjointness_margin = 0.0;
    double fix_tol = 1e-8;
    double idem_tol = 1e-6;

    bool pass() const {
        return arc_pass[0] && arc_pass[1] &&
               fix_residual[0] < fix_tol && fix_residual[1] < fix_tol &&
               idem_residual[0] < idem_tol && idem_residual[1] < idem_tol &&
               disjointness_margin > 0.0;
    }
};

/// Check that each arc is the hyperbolic geodesic between its endpoints in
/// the complement of the other arc, via the discrete Riemann map oracle,
/// and attach the involution residuals. Requires tol >= 5 * budget.h.
VerificationReport verify_configuration(const CanonicalConfiguration& config,
                                        double tol, int resolution);

} // namespace canarc
