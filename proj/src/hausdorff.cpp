#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "canarc/oracle.hpp"

namespace canarc {

Polyline downsample_polyline(const Polyline& arc, double gap) {
    Polyline out;
    if (arc.samples.empty()) return out;
    out.samples.push_back(arc.samples.front());
    double acc = 0.0;
    for (std::size_t i = 1; i + 1 < arc.samples.size(); ++i) {
        acc += chordal_distance(arc.samples[i - 1], arc.samples[i]);
        if (acc >= gap || arc.samples[i].is_infinity()) {
            out.samples.push_back(arc.samples[i]);
            acc = 0.0;
        }
    }
    if (arc.samples.size() >= 2) out.samples.push_back(arc.samples.back());
    return out;
}

namespace {

using Vec3 = std::array<double, 3>;

double dist2(const Vec3& a, const Vec3& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return dx * dx + dy * dy + dz * dz;
}

// Squared distance from p to the straight R^3 chord [a, b].
double point_segment_dist2(const Vec3& p, const Vec3& a, const Vec3& b) {
    const double ab[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    const double ap[3] = {p[0] - a[0], p[1] - a[1], p[2] - a[2]};
    const double len2 = ab[0] * ab[0] + ab[1] * ab[1] + ab[2] * ab[2];
    double t = 0.0;
    if (len2 > 0.0)
        t = std::clamp(
            (ap[0] * ab[0] + ap[1] * ab[1] + ap[2] * ab[2]) / len2, 0.0, 1.0);
    const Vec3 c{a[0] + t * ab[0], a[1] + t * ab[1], a[2] + t * ab[2]};
    return dist2(p, c);
}

// Embedded polyline with chord-refined query points and a two-level
// bounding-sphere index over the chain of segments.
struct EmbeddedPolyline {
    std::vector<Vec3> pts;
    std::vector<Vec3> seg_a, seg_b, seg_mid;
    std::vector<double> seg_rad;
    struct Block {
        Vec3 mid{};
        double rad = 0.0;
        std::size_t lo = 0, hi = 0;
    };
    std::vector<Block> blocks;

    EmbeddedPolyline(const Polyline& arc, double refine_gap) {
        std::vector<Vec3> raw;
        raw.reserve(arc.samples.size());
        for (const auto& p : arc.samples) raw.push_back(embed3(p));
        for (std::size_t i = 0; i < raw.size(); ++i) {
            pts.push_back(raw[i]);
            if (i + 1 == raw.size()) break;
            seg_a.push_back(raw[i]);
            seg_b.push_back(raw[i + 1]);
            seg_mid.push_back({0.5 * (raw[i][0] + raw[i + 1][0]),
                               0.5 * (raw[i][1] + raw[i + 1][1]),
                               0.5 * (raw[i][2] + raw[i + 1][2])});
            const double d = std::sqrt(dist2(raw[i], raw[i + 1]));
            seg_rad.push_back(0.5 * d);
            if (d > refine_gap) {
                const int n = int(std::ceil(d / refine_gap));
                for (int k = 1; k < n; ++k) {
                    const double t = double(k) / n;
                    pts.push_back(
                        {raw[i][0] + t * (raw[i + 1][0] - raw[i][0]),
                         raw[i][1] + t * (raw[i + 1][1] - raw[i][1]),
                         raw[i][2] + t * (raw[i + 1][2] - raw[i][2])});
                }
            }
        }
        constexpr std::size_t kBlock = 32;
        for (std::size_t lo = 0; lo < seg_a.size(); lo += kBlock) {
            Block blk;
            blk.lo = lo;
            blk.hi = std::min(lo + kBlock, seg_a.size());
            Vec3 c{0, 0, 0};
            for (std::size_t i = blk.lo; i < blk.hi; ++i)
                for (int d = 0; d < 3; ++d) c[d] += seg_mid[i][d];
            const double inv = 1.0 / double(blk.hi - blk.lo);
            for (int d = 0; d < 3; ++d) c[d] *= inv;
            blk.mid = c;
            for (std::size_t i = blk.lo; i < blk.hi; ++i)
                blk.rad = std::max(
                    blk.rad, std::sqrt(dist2(c, seg_mid[i])) + seg_rad[i]);
            blocks.push_back(blk);
        }
    }

    double distance2(const Vec3& p, double bound2) const {
        double best2 = bound2;
        if (seg_a.empty()) return std::min(best2, dist2(p, pts.front()));
        for (const auto& blk : blocks) {
            const double reach =
                std::sqrt(dist2(p, blk.mid)) - blk.rad;
            if (reach > 0.0 && reach * reach >= best2) continue;
            for (std::size_t i = blk.lo; i < blk.hi; ++i) {
                const double r =
                    std::sqrt(dist2(p, seg_mid[i])) - seg_rad[i];
                if (r > 0.0 && r * r >= best2) continue;
                best2 = std::min(best2,
                                 point_segment_dist2(p, seg_a[i], seg_b[i]));
            }
        }
        return best2;
    }
};

double directed_sup(const EmbeddedPolyline& from, const EmbeddedPolyline& to) {
    double sup2 = 0.0;
    for (const auto& p : from.pts) {
        const double d2 =
            to.distance2(p, std::numeric_limits<double>::infinity());
        sup2 = std::max(sup2, d2);
    }
    return std::sqrt(sup2);
}

} // namespace

double chordal_hausdorff(const Polyline& a, const Polyline& b) {
    if (a.samples.empty() || b.samples.empty())
        raise(ErrorCode::InvalidArguments,
              "Hausdorff distance of an empty polyline");
    constexpr double kRefineGap = 1e-3;
    const EmbeddedPolyline ea(a, kRefineGap), eb(b, kRefineGap);
    return std::max(directed_sup(ea, eb), directed_sup(eb, ea));
}

double chordal_min_distance(const Polyline& a, const Polyline& b) {
    if (a.samples.empty() || b.samples.empty())
        raise(ErrorCode::InvalidArguments,
              "minimal distance of an empty polyline");
    const Polyline da = downsample_polyline(a, 2e-3);
    const Polyline db = downsample_polyline(b, 2e-3);
    const EmbeddedPolyline ea(da, 4e-3), eb(db, 4e-3);
    double best2 = std::numeric_limits<double>::infinity();
    for (const auto& p : ea.pts) best2 = eb.distance2(p, best2);
    for (const auto& p : eb.pts) best2 = ea.distance2(p, best2);
    return std::sqrt(best2);
}

std::vector<double> distances_to_polyline(const std::vector<SpherePoint>& pts,
                                          const Polyline& arc) {
    if (arc.samples.empty())
        raise(ErrorCode::InvalidArguments, "distance to an empty polyline");
    const Polyline down = downsample_polyline(arc, 2e-3);
    const EmbeddedPolyline idx(down, 4e-3);
    std::vector<double> out;
    out.reserve(pts.size());
    for (const auto& p : pts)
        out.push_back(std::sqrt(idx.distance2(
            embed3(p), std::numeric_limits<double>::infinity())));
    return out;
}

} // namespace canarc
