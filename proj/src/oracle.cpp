#include "canarc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

namespace canarc {

namespace {

// sqrt(z^2 + h^2) mapping H minus the vertical slit [0, ih] onto H:
// principal square root, negated on the left half so the sign of the real
// part survives.
Complex slit_open(Complex z, double h) {
    Complex w = std::sqrt(z * z + h * h);
    if (z.real() < 0.0) w = -w;
    if (w.imag() < 0.0) w = Complex(w.real(), 0.0);
    return w;
}

// Inverse of slit_open: H -> H minus [0, ih]. Interior points stay
// interior; a clamp absorbs boundary rounding noise.
Complex slit_close(Complex w, double h) {
    if (w.imag() < 0.0) w = Complex(w.real(), 0.0);
    Complex z = std::sqrt(w * w - Complex(h * h, 0.0));
    if (w.real() < 0.0) z = -z;
    if (z.imag() < 0.0) z = Complex(z.real(), 0.0);
    return z;
}

bool seg_intersect(Complex a, Complex b, Complex c, Complex d) {
    auto orient = [](Complex p, Complex q, Complex r) {
        const double v = (q.real() - p.real()) * (r.imag() - p.imag()) -
                         (q.imag() - p.imag()) * (r.real() - p.real());
        const double scale = std::abs(q - p) * std::abs(r - p) + 1e-300;
        const double t = v / scale;
        return t > 1e-13 ? 1 : (t < -1e-13 ? -1 : 0);
    };
    const int o1 = orient(a, b, c), o2 = orient(a, b, d);
    const int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

// Full pairwise simplicity check; quadratic, so only used on arcs of
// moderate size. Larger arcs rely on the interiority guard during the
// unzip itself.
void check_simple(const std::vector<Complex>& w) {
    if (w.size() > 4000) return;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        for (std::size_t j = i + 2; j + 1 < w.size(); ++j) {
            if (seg_intersect(w[i], w[i + 1], w[j], w[j + 1]))
                raise(ErrorCode::SelfIntersection,
                      "arc segments " + std::to_string(i) + " and " +
                          std::to_string(j) + " cross");
        }
    }
}

} // namespace

DiscreteRiemannMap unzip_arc(const Polyline& arc) {
    if (arc.samples.size() < 2)
        raise(ErrorCode::DegenerateArc, "unzip needs at least 2 samples");
    for (std::size_t i = 0; i + 1 < arc.samples.size(); ++i)
        if (chordal_distance(arc.samples[i], arc.samples[i + 1]) <= 1e-13)
            raise(ErrorCode::DegenerateArc,
                  "consecutive samples coincide at index " +
                      std::to_string(i));

    DiscreteRiemannMap dm;

    // Move the arc off infinity (and away from huge coordinates) by a
    // deterministic inversion about the candidate point farthest from it.
    bool needs_pre = false;
    for (const auto& p : arc.samples)
        if (p.is_infinity() || std::abs(p.value()) > 1e4) needs_pre = true;
    if (needs_pre) {
        static const Complex grid[] = {
            {0, 0},  {1, 0},   {-1, 0}, {0, 1},   {0, -1}, {2, 0},
            {-2, 0}, {0, 2},   {0, -2}, {1, 1},   {1, -1}, {-1, 1},
            {-1, -1}, {3, 0},  {0, 3},  {0.5, 0}, {0, 0.5}, {0.5, 0.5},
            {-0.5, 0.5}, {2, 2}};
        const std::size_t stride =
            std::max<std::size_t>(1, arc.samples.size() / 512);
        Complex best_c = grid[0];
        double best_d = -1.0;
        for (const Complex& c : grid) {
            const SpherePoint sc = SpherePoint::finite(c);
            double dmin = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < arc.samples.size(); i += stride)
                dmin = std::min(dmin, chordal_distance(sc, arc.samples[i]));
            dmin = std::min(dmin, chordal_distance(sc, arc.samples.back()));
            if (dmin > best_d) {
                best_d = dmin;
                best_c = c;
            }
        }
        dm.pre_ = MobiusMap(Complex(0.0), Complex(1.0), Complex(1.0),
                            -best_c); // z -> 1/(z - c)
        dm.has_pre_ = true;
    }

    std::vector<Complex> w;
    w.reserve(arc.samples.size());
    for (const auto& p : arc.samples) {
        const SpherePoint q =
            dm.has_pre_ ? mobius_apply(dm.pre_, p) : p;
        if (q.is_infinity())
            raise(ErrorCode::DegenerateArc,
                  "arc still touches infinity after the preliminary map");
        w.push_back(q.value());
    }
    check_simple(w);

    dm.w0_ = w[0];
    dm.w1_ = w[1];

    // Current images of the not yet unzipped nodes under the base map
    // i*sqrt((z - w1)/(z - w0)).
    std::vector<Complex> img(w.size());
    for (std::size_t j = 2; j < w.size(); ++j) {
        const Complex m = (w[j] - w[1]) / (w[j] - w[0]);
        img[j] = Complex(0.0, 1.0) * std::sqrt(m);
    }
    SpherePoint far = SpherePoint::infinity(); // image of w0

    dm.slits_.reserve(w.size() > 2 ? w.size() - 2 : 0);
    for (std::size_t k = 2; k < w.size(); ++k) {
        const Complex a = img[k];
        if (!(a.imag() > 1e-13 * std::abs(a)))
            raise(ErrorCode::SelfIntersection,
                  "arc is not simple at its resolution (node " +
                      std::to_string(k) + ")");
        DiscreteRiemannMap::Slit slit;
        slit.invb = a.real() / std::norm(a);
        slit.h = std::norm(a) / a.imag();

        auto apply = [&](Complex z) {
            const Complex zz = z / (1.0 - z * slit.invb);
            return slit_open(zz, slit.h);
        };
        for (std::size_t j = k + 1; j < w.size(); ++j) img[j] = apply(img[j]);
        if (far.is_infinity()) {
            if (slit.invb != 0.0) {
                const Complex mapped = slit_open(-1.0 / slit.invb, slit.h);
                far = SpherePoint::finite(mapped);
            }
        } else {
            far = SpherePoint::finite(apply(far.value()));
        }
        dm.slits_.push_back(slit);
    }
    dm.far_image_ = far;
    return dm;
}

Complex DiscreteRiemannMap::map(const SpherePoint& p) const {
    const SpherePoint q = has_pre_ ? mobius_apply(pre_, p) : p;
    Complex z;
    if (q.is_infinity()) {
        z = Complex(0.0, 1.0);
    } else {
        const Complex m = (q.value() - w1_) / (q.value() - w0_);
        z = Complex(0.0, 1.0) * std::sqrt(m);
    }
    for (const Slit& s : slits_) {
        z = z / (1.0 - z * s.invb);
        z = slit_open(z, s.h);
    }
    return z;
}

std::pair<SpherePoint, bool> DiscreteRiemannMap::unmap_checked(
    Complex z) const {
    for (auto it = slits_.rbegin(); it != slits_.rend(); ++it) {
        z = slit_close(z, it->h);
        z = z / (1.0 + z * it->invb);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            return {SpherePoint::infinity(), false};
    }
    const Complex m = -z * z;
    const Complex den = 1.0 - m;
    SpherePoint out;
    if (std::abs(den) == 0.0) {
        out = SpherePoint::infinity();
    } else {
        const Complex val = (w1_ - m * w0_) / den;
        out = (std::isfinite(val.real()) && std::isfinite(val.imag()))
                  ? SpherePoint::finite(val)
                  : SpherePoint::infinity();
    }
    return {has_pre_ ? mobius_apply(pre_.inverse(), out) : out, true};
}

SpherePoint DiscreteRiemannMap::unmap(Complex z) const {
    return unmap_checked(z).first;
}

namespace {

double distance_to_polyline(const SpherePoint& p, const Polyline& arc) {
    Polyline single;
    single.samples = {p};
    return chordal_min_distance(single, arc);
}

} // namespace

namespace {

constexpr double kGeoFineGap = 2e-3;

// One conformal chart of the slit complement: H-geodesic between the
// images of two domain points, parametrized from the first one.
struct GeodesicChart {
    const DiscreteRiemannMap* dm = nullptr;
    std::function<Complex(double)> at; // model point at t in [0, 1]
    bool valid = false;

    GeodesicChart(const DiscreteRiemannMap& map, Complex u, Complex v)
        : dm(&map) {
        if (!std::isfinite(u.real()) || !std::isfinite(u.imag()) ||
            !std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return;
        // A starved endpoint image (height at rounding noise) still
        // anchors the geodesic: clamp it onto the boundary.
        u = Complex(u.real(), std::max(u.imag(), 0.0));
        v = Complex(v.real(), std::max(v.imag(), 0.0));
        if (u.imag() <= 0.0 && v.imag() <= 0.0) return;
        const double scale = std::abs(u) + std::abs(v) + 1.0;
        if (std::abs(u.real() - v.real()) <= 1e-12 * scale) {
            if (u.imag() <= 0.0 || v.imag() <= 0.0) return;
            const double x = 0.5 * (u.real() + v.real());
            const double la = std::log(u.imag()), lb = std::log(v.imag());
            at = [=](double t) {
                return Complex(x, std::exp(la + t * (lb - la)));
            };
        } else {
            const double c = (std::norm(u) - std::norm(v)) /
                             (2.0 * (u.real() - v.real()));
            const double r = std::hypot(u.real() - c, u.imag());
            const double ta = std::atan2(u.imag(), u.real() - c);
            const double tb = std::atan2(v.imag(), v.real() - c);
            at = [=](double t) {
                const double th = ta + t * (tb - ta);
                return Complex(c + r * std::cos(th), r * std::sin(th));
            };
        }
        valid = true;
    }

    std::pair<SpherePoint, bool> pull(double t) const {
        const Complex w = at(t);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
            return {SpherePoint::infinity(), false};
        return dm->unmap_checked(w);
    }
};

// Adaptively sampled geodesic points from the chart's t = 0 end, truncated
// where the chart stops resolving the curve (parameter underflow or
// non-finite pullbacks). Returns on-curve samples ordered outward.
std::vector<SpherePoint> trusted_portion(const GeodesicChart& chart,
                                         const SpherePoint& start,
                                         bool expect_full,
                                         std::size_t cap) {
    std::map<double, std::pair<SpherePoint, bool>> fine;
    fine.emplace(0.0, std::make_pair(start, true));
    fine.emplace(1.0, chart.pull(1.0));
    for (int n = 2; n <= 64; n *= 2)
        for (int j = 1; j < n; j += 2)
            fine.emplace(double(j) / n, chart.pull(double(j) / n));
    for (int round = 0; round < 52 && fine.size() < cap; ++round) {
        std::vector<double> to_insert;
        auto it = fine.begin();
        for (auto next = std::next(it); next != fine.end(); ++it, ++next) {
            const double width = next->first - it->first;
            if (width <= 4e-16 * std::max(it->first, 1e-3)) continue;
            if (!it->second.second || !next->second.second) continue;
            if (chordal_distance(it->second.first, next->second.first) >
                kGeoFineGap)
                to_insert.push_back(0.5 * (it->first + next->first));
        }
        if (to_insert.empty()) break;
        for (double t : to_insert) {
            if (fine.size() >= cap) break;
            fine.emplace(t, chart.pull(t));
        }
    }

    // Walk outward from t = 0; stop at the first segment the refinement
    // could not settle.
    std::vector<SpherePoint> out;
    const SpherePoint* prev = nullptr;
    for (const auto& [t, sample] : fine) {
        if (!sample.second) break;
        if (prev &&
            chordal_distance(*prev, sample.first) > 3.0 * kGeoFineGap) {
            if (!expect_full) break;
        }
        out.push_back(sample.first);
        prev = &sample.first;
    }
    return out;
}

Polyline emit_resolution(const std::vector<SpherePoint>& pts,
                         const SpherePoint& p, const SpherePoint& q,
                         int resolution) {
    std::vector<double> lens(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i)
        lens[i] = lens[i - 1] + chordal_distance(pts[i - 1], pts[i]);
    const double total = lens.back();

    Polyline out;
    out.samples.reserve(resolution);
    out.samples.push_back(p);
    std::size_t cursor = 0;
    for (int j = 1; j + 1 < resolution; ++j) {
        const double target = total * double(j) / double(resolution - 1);
        while (cursor + 1 < lens.size() && lens[cursor + 1] < target)
            ++cursor;
        const SpherePoint& s = pts[std::min(cursor + 1, pts.size() - 1)];
        if (chordal_distance(out.samples.back(), s) <= 1e-13) continue;
        out.samples.push_back(s);
    }
    if (out.samples.size() > 1 &&
        chordal_distance(out.samples.back(), q) <= 1e-13)
        out.samples.pop_back();
    out.samples.push_back(q);
    return out;
}

} // namespace

Polyline geodesic_in_complement(const Polyline& arc, const SpherePoint& p,
                                const SpherePoint& q, int resolution) {
    if (resolution < 2)
        raise(ErrorCode::InvalidArguments, "resolution must be >= 2");
    if (chordal_distance(p, q) <= 1e-12)
        raise(ErrorCode::InvalidArguments, "geodesic endpoints coincide");
    for (const SpherePoint* e : {&p, &q})
        if (distance_to_polyline(*e, arc) < 1e-9)
            raise(ErrorCode::EndpointOnSlit,
                  "geodesic endpoint lies on the slit arc");

    // The pullback distortion is wildly nonuniform, so the model geodesic
    // is sampled adaptively and re-emitted equidistributed in chordal
    // arclength. Deeply wound complements exhaust double precision around
    // one endpoint image; in that case a second chart (the slit unzipped
    // from its other end) resolves the other half of the curve and the
    // two trusted portions are stitched.
    const DiscreteRiemannMap fwd = unzip_arc(arc);
    const Complex u = fwd.map(p), v = fwd.map(q);
    const double rel_u = u.imag() / (std::abs(u) + 1.0);
    const double rel_v = v.imag() / (std::abs(v) + 1.0);
    constexpr double kHealthy = 1e-13;
    const bool u_ok = std::isfinite(rel_u) && rel_u > kHealthy;
    const bool v_ok = std::isfinite(rel_v) && rel_v > kHealthy;
    if (!u_ok && !v_ok)
        raise(ErrorCode::NonConvergence,
              "both endpoint images are numerically on the boundary");

    if (u_ok && v_ok) {
        const GeodesicChart chart(fwd, u, v);
        if (!chart.valid)
            raise(ErrorCode::NonConvergence, "degenerate model geodesic");
        const std::vector<SpherePoint> pts =
            trusted_portion(chart, p, true, std::size_t(1) << 18);
        return emit_resolution(pts, p, q, resolution);
    }

    // One endpoint image is starved: build this chart from its healthy
    // end, and the reversed chart for the other half.
    const SpherePoint& healthy = u_ok ? p : q;
    const SpherePoint& deep = u_ok ? q : p;
    const GeodesicChart chart_a(fwd, u_ok ? u : v, u_ok ? v : u);
    if (!chart_a.valid)
        raise(ErrorCode::NonConvergence, "degenerate model geodesic");
    const std::vector<SpherePoint> part_a =
        trusted_portion(chart_a, healthy, false, std::size_t(1) << 17);

    Polyline reversed_arc = arc;
    std::reverse(reversed_arc.samples.begin(), reversed_arc.samples.end());
    const DiscreteRiemannMap rev = unzip_arc(reversed_arc);
    const Complex ru = rev.map(deep), rv = rev.map(healthy);
    const double rel_ru = ru.imag() / (std::abs(ru) + 1.0);
    if (!(std::isfinite(rel_ru) && rel_ru > kHealthy))
        raise(ErrorCode::NonConvergence,
              "configuration too deeply wound for the oracle's precision");
    const GeodesicChart chart_b(rev, ru, rv);
    if (!chart_b.valid)
        raise(ErrorCode::NonConvergence, "degenerate model geodesic");
    const std::vector<SpherePoint> part_b =
        trusted_portion(chart_b, deep, false, std::size_t(1) << 17);

    // Stitch at the closest pair between the two trusted tails.
    if (part_a.size() < 2 || part_b.size() < 2)
        raise(ErrorCode::NonConvergence, "trusted geodesic range is empty");
    double best = std::numeric_limits<double>::infinity();
    std::size_t ia = part_a.size() - 1, ib = part_b.size() - 1;
    const std::size_t a_from = part_a.size() / 2, b_from = part_b.size() / 2;
    for (std::size_t i = a_from; i < part_a.size(); ++i)
        for (std::size_t j = b_from; j < part_b.size(); ++j) {
            const double d = chordal_distance(part_a[i], part_b[j]);
            if (d < best) {
                best = d;
                ia = i;
                ib = j;
            }
        }
    if (best > 10.0 * kGeoFineGap)
        raise(ErrorCode::NonConvergence,
              "trusted geodesic ranges do not overlap (gap " +
                  std::to_string(best) + ")");

    // deep -> healthy ordering, then reorient to p -> q.
    std::vector<SpherePoint> stitched(part_b.begin(),
                                      part_b.begin() + (long)ib + 1);
    for (std::size_t i = ia + 1; i-- > 0;) stitched.push_back(part_a[i]);
    if (u_ok) std::reverse(stitched.begin(), stitched.end());
    return emit_resolution(stitched, p, q, resolution);
}

namespace {

// Anti-conformal involution sigma_k of the complement of arc_{1-k},
// realized through the lattice: lift with wp_invert, reduce to the strip
// around the fixed line, reflect, push back down.
class LatticeInvolution {
public:
    LatticeInvolution(const CanonicalConfiguration& config, int k)
        : basis_(config.basis),
          omega1_(config.omega1),
          omega2_(config.omega2),
          forward_(config.transport),
          backward_(config.transport.inverse()),
          k_(k) {}

    SpherePoint operator()(const SpherePoint& original) const {
        const SpherePoint w = mobius_apply(forward_, original);
        Complex z = wp_invert(w, basis_);
        // Strip reduction in class coordinates: beta in [-1/2,1/2) for
        // sigma_0 (line through 0), beta in [0,1) for sigma_1 (line
        // through omega2/2).
        const auto [alpha, beta] = coords_class(z);
        const double shift =
            k_ == 0 ? std::floor(beta + 0.5) : std::floor(beta);
        z -= shift * omega2_;
        z -= std::floor(alpha + 0.5) * omega1_;

        Complex reflected;
        if (k_ == 0) {
            reflected = omega1_ * std::conj(z / omega1_);
        } else {
            const Complex rel = z - omega2_ * 0.5;
            reflected = omega2_ * 0.5 + omega1_ * std::conj(rel / omega1_);
        }
        const WpValue val = wp_eval(reflected, basis_);
        return mobius_apply(backward_, val.p_point());
    }

private:
    std::array<double, 2> coords_class(Complex z) const {
        const Complex w1 = omega1_, w2 = omega2_;
        const double det =
            w1.real() * w2.imag() - w1.imag() * w2.real();
        return {(z.real() * w2.imag() - z.imag() * w2.real()) / det,
                (-z.real() * w1.imag() + z.imag() * w1.real()) / det};
    }

    const LatticeBasis& basis_;
    Complex omega1_, omega2_;
    MobiusMap forward_, backward_;
    int k_;
};

std::vector<SpherePoint> probe_grid(const CanonicalConfiguration& config,
                                    int want) {
    const int candidates = 600;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<SpherePoint> grid;
    grid.reserve(candidates);
    for (int k = 0; k < candidates; ++k) {
        const double zc = 1.0 - 2.0 * (k + 0.5) / candidates;
        const double rho = std::sqrt(std::max(0.0, 1.0 - zc * zc));
        const double phi = golden * k;
        const Complex stereo(rho * std::cos(phi) / (1.0 - zc),
                             rho * std::sin(phi) / (1.0 - zc));
        if (std::isfinite(stereo.real()) && std::isfinite(stereo.imag()))
            grid.push_back(SpherePoint::finite(stereo));
    }
    const std::vector<double> d0 = distances_to_polyline(grid, config.arc0);
    const std::vector<double> d1 = distances_to_polyline(grid, config.arc1);
    std::vector<SpherePoint> probes;
    for (std::size_t k = 0; k < grid.size() && (int)probes.size() < want; ++k)
        if (d0[k] >= 0.1 && d1[k] >= 0.1) probes.push_back(grid[k]);
    return probes;
}

InvolutionResiduals residuals_for(const CanonicalConfiguration& config,
                                  int k,
                                  const std::vector<SpherePoint>& probes) {
    const LatticeInvolution sigma(config, k);
    const Polyline& own = k == 0 ? config.arc0 : config.arc1;
    const Polyline& other = k == 0 ? config.arc1 : config.arc0;

    InvolutionResiduals out;
    for (const SpherePoint& s : own.samples)
        out.fix_residual =
            std::max(out.fix_residual, chordal_distance(sigma(s), s));

    std::vector<SpherePoint> images;
    images.reserve(probes.size());
    for (const SpherePoint& p : probes) images.push_back(sigma(p));
    const std::vector<double> clearances =
        distances_to_polyline(images, other);
    out.image_clearance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < probes.size(); ++i) {
        out.idem_residual = std::max(
            out.idem_residual, chordal_distance(sigma(images[i]), probes[i]));
        out.image_clearance = std::min(out.image_clearance, clearances[i]);
    }
    return out;
}

} // namespace

std::pair<InvolutionResiduals, InvolutionResiduals>
involution_residuals(const CanonicalConfiguration& config) {
    const std::vector<SpherePoint> probes = probe_grid(config, 50);
    if (probes.empty())
        raise(ErrorCode::InvalidArguments,
              "no probe points clear of both arcs");
    return {residuals_for(config, 0, probes),
            residuals_for(config, 1, probes)};
}

VerificationReport verify_configuration(const CanonicalConfiguration& config,
                                        double tol, int resolution) {
    if (tol < 5.0 * config.budget.h)
        raise(ErrorCode::InvalidArguments,
              "tolerance below the discretization floor 5*h");

    VerificationReport report;
    report.tol = tol;
    report.resolution = resolution;
    report.sampling_h = config.budget.h;

    // Endpoint integrity against the pairing.
    const auto check_ends = [&](const Polyline& arc,
                                const std::array<int, 2>& pair) {
        const SpherePoint& pa = config.points[pair[0]];
        const SpherePoint& pb = config.points[pair[1]];
        const double straight = chordal_distance(arc.front(), pa) +
                                chordal_distance(arc.back(), pb);
        const double crossed = chordal_distance(arc.front(), pb) +
                               chordal_distance(arc.back(), pa);
        if (std::min(straight, crossed) > 1e-12)
            raise(ErrorCode::EndpointMismatch,
                  "arc endpoints do not match the paired points");
    };
    check_ends(config.arc0, pairing_first(config.pairing));
    check_ends(config.arc1, pairing_second(config.pairing));

    const double slit_gap = std::max(2.0 * config.budget.h, 4e-3);
    for (int k = 0; k < 2; ++k) {
        const Polyline& own = k == 0 ? config.arc0 : config.arc1;
        const Polyline& other = k == 0 ? config.arc1 : config.arc0;
        const auto pair = k == 0 ? pairing_first(config.pairing)
                                 : pairing_second(config.pairing);
        const Polyline slit = downsample_polyline(other, slit_gap);
        const Polyline geo =
            geodesic_in_complement(slit, config.points[pair[0]],
                                   config.points[pair[1]], resolution);
        report.geodesic_distance[k] = chordal_hausdorff(own, geo);
        report.arc_pass[k] = report.geodesic_distance[k] < tol;
    }

    const auto [res0, res1] = involution_residuals(config);
    report.fix_residual = {res0.fix_residual, res1.fix_residual};
    report.idem_residual = {res0.idem_residual, res1.idem_residual};
    report.image_clearance = {res0.image_clearance, res1.image_clearance};
    report.disjointness_margin =
        chordal_min_distance(config.arc0, config.arc1);
    return report;
}

} // namespace canarc
