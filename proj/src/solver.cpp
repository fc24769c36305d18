#include "canarc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>

#include "canarc/oracle.hpp"

namespace canarc {

namespace {

// Classify a point of (1/2)Gamma: returns -1 for a lattice point, else the
// root index 0..2 of its half-period class (parity of the doubled
// coordinates in the stored basis).
int half_lattice_class(Complex z, const LatticeBasis& basis) {
    const auto [a, b] = basis.coords(z);
    const double ta = 2.0 * a, tb = 2.0 * b;
    const long long ia = std::llround(ta);
    const long long ib = std::llround(tb);
    if (std::abs(ta - double(ia)) > 1e-9 || std::abs(tb - double(ib)) > 1e-9)
        raise(ErrorCode::InvalidArguments,
              "arc endpoint is not a point of (1/2)Gamma");
    const int pa = int(((ia % 2) + 2) % 2);
    const int pb = int(((ib % 2) + 2) % 2);
    if (pa == 0 && pb == 0) return -1;
    if (pa == 1 && pb == 0) return 0;
    if (pa == 0 && pb == 1) return 1;
    return 2;
}

// Exact endpoint value of the arc at a half-lattice point: infinity at
// lattice points, the labeled root otherwise. The parity-derived label is
// cross-checked against evaluation before it is trusted.
SpherePoint endpoint_value(Complex z, const LatticeBasis& basis) {
    const int cls = half_lattice_class(z, basis);
    const WpValue val = wp_eval(z, basis);
    if (cls < 0) {
        if (!val.is_pole && std::abs(val.p) < 1e6)
            raise(ErrorCode::LabelingFailure,
                  "lattice point did not evaluate to the pole");
        return SpherePoint::infinity();
    }
    const Complex root = basis.roots().root(cls);
    if (val.is_pole || std::abs(val.p - root) > 1e-8)
        raise(ErrorCode::LabelingFailure,
              "half-period parity disagrees with evaluation");
    return SpherePoint::finite(root);
}

double angle_between(const std::array<double, 3>& x,
                     const std::array<double, 3>& y,
                     const std::array<double, 3>& z) {
    const double u[3] = {y[0] - x[0], y[1] - x[1], y[2] - x[2]};
    const double v[3] = {z[0] - y[0], z[1] - y[1], z[2] - y[2]};
    const double nu = std::hypot(u[0], u[1], u[2]);
    const double nv = std::hypot(v[0], v[1], v[2]);
    if (nu < 1e-8 || nv < 1e-8) return 0.0; // below the noise floor
    const double dot = (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]) / (nu * nv);
    return std::acos(std::clamp(dot, -1.0, 1.0));
}

using ArcMap = std::function<SpherePoint(double)>;

// Adaptive sampling of t -> f(t), t in [0,1]: uniform dyadic doubling down
// to half the budget thresholds, then local bisection to enforce them.
// The uniform stage keeps the sample set stable across reparametrizations
// of the same image curve (lattice translates and reflections).
std::vector<SpherePoint> sample_mapped(const ArcMap& f,
                                       const SpherePoint& first,
                                       const SpherePoint& last,
                                       const SamplingBudget& budget) {
    const double theta_max = budget.theta_max_deg * std::numbers::pi / 180.0;
    std::map<double, SpherePoint> samples;
    samples.emplace(0.0, first);
    samples.emplace(1.0, last);
    for (long long n = 2; n <= 8; n *= 2)
        for (long long j = 1; j < n; j += 2)
            samples.emplace(double(j) / double(n), f(double(j) / double(n)));

    auto violates = [&](double gap_limit, double angle_limit) {
        std::vector<std::array<double, 3>> e;
        e.reserve(samples.size());
        for (const auto& [t, p] : samples) e.push_back(embed3(p));
        for (std::size_t i = 0; i + 1 < e.size(); ++i) {
            const double g = std::hypot(e[i + 1][0] - e[i][0],
                                        e[i + 1][1] - e[i][1],
                                        e[i + 1][2] - e[i][2]);
            if (g > gap_limit) return true;
            if (i + 2 < e.size() &&
                angle_between(e[i], e[i + 1], e[i + 2]) > angle_limit)
                return true;
        }
        return false;
    };

    int level = 3; // 8 uniform segments so far
    while (violates(budget.h * 0.5, theta_max * 0.5) && level < 24) {
        const long long n = 1LL << (level + 1);
        if ((long long)samples.size() + n / 2 > budget.max_samples) break;
        for (long long j = 1; j < n; j += 2)
            samples.emplace(double(j) / double(n), f(double(j) / double(n)));
        ++level;
    }

    // Local enforcement of the stated budget.
    for (int round = 0; round < 64; ++round) {
        std::vector<double> to_insert;
        std::vector<std::pair<double, std::array<double, 3>>> e;
        e.reserve(samples.size());
        for (const auto& [t, p] : samples) e.emplace_back(t, embed3(p));
        for (std::size_t i = 0; i + 1 < e.size(); ++i) {
            const double g = std::hypot(e[i + 1].second[0] - e[i].second[0],
                                        e[i + 1].second[1] - e[i].second[1],
                                        e[i + 1].second[2] - e[i].second[2]);
            bool split = g > budget.h;
            if (!split && i > 0 &&
                angle_between(e[i - 1].second, e[i].second,
                              e[i + 1].second) > theta_max)
                split = true;
            if (split && e[i + 1].first - e[i].first > 1e-12)
                to_insert.push_back(0.5 * (e[i].first + e[i + 1].first));
        }
        if (to_insert.empty()) break;
        if ((long long)(samples.size() + to_insert.size()) >
            budget.max_samples)
            raise(ErrorCode::BudgetExceeded,
                  "arc refinement exceeded " +
                      std::to_string(budget.max_samples) + " samples");
        for (double t : to_insert) samples.emplace(t, f(t));
    }

    std::vector<SpherePoint> out;
    out.reserve(samples.size());
    for (const auto& [t, p] : samples) out.push_back(p);
    // Drop interior near-duplicates; endpoints stay.
    std::vector<SpherePoint> dedup;
    dedup.push_back(out.front());
    for (std::size_t i = 1; i + 1 < out.size(); ++i)
        if (chordal_distance(dedup.back(), out[i]) > 1e-13)
            dedup.push_back(out[i]);
    if (dedup.size() >= 2 &&
        chordal_distance(dedup.back(), out.back()) <= 1e-13)
        dedup.pop_back();
    dedup.push_back(out.back());
    return dedup;
}

// The open segment must avoid (1/2)Gamma.
void check_segment_interior(Complex z_start, Complex z_end,
                            const LatticeBasis& basis) {
    const auto [a0, b0] = basis.coords(z_start);
    const auto [a1, b1] = basis.coords(z_end);
    const double lo_a = std::min(a0, a1) - 0.1, hi_a = std::max(a0, a1) + 0.1;
    const double lo_b = std::min(b0, b1) - 0.1, hi_b = std::max(b0, b1) + 0.1;
    const Complex d = z_end - z_start;
    const double len2 = std::norm(d);
    for (long long ja = (long long)std::floor(2 * lo_a);
         ja <= (long long)std::ceil(2 * hi_a); ++ja) {
        for (long long jb = (long long)std::floor(2 * lo_b);
             jb <= (long long)std::ceil(2 * hi_b); ++jb) {
            const Complex hp = 0.5 * (double(ja) * basis.omega1_0() +
                                      double(jb) * basis.omega2_0());
            const double t = ((hp - z_start) * std::conj(d)).real() / len2;
            if (t < 1e-9 || t > 1.0 - 1e-9) continue;
            if (std::abs(hp - (z_start + t * d)) <
                1e-9 * std::abs(basis.omega1_0()))
                raise(ErrorCode::InvalidArguments,
                      "segment interior meets (1/2)Gamma");
        }
    }
}

Polyline sample_arc_transported(Complex z_start, Complex z_end,
                                const LatticeBasis& basis,
                                const SamplingBudget& budget,
                                const MobiusMap& back) {
    if (std::abs(z_end - z_start) == 0.0)
        raise(ErrorCode::InvalidArguments, "degenerate parameter segment");
    check_segment_interior(z_start, z_end, basis);

    const SpherePoint first =
        mobius_apply(back, endpoint_value(z_start, basis));
    const SpherePoint last = mobius_apply(back, endpoint_value(z_end, basis));

    const ArcMap f = [&](double t) {
        const Complex z = z_start + t * (z_end - z_start);
        return mobius_apply(back, wp_eval(z, basis).p_point());
    };

    Polyline arc;
    arc.samples = sample_mapped(f, first, last, budget);
    if (arc.samples.size() < 2)
        raise(ErrorCode::DegenerateArc,
              "sampling produced fewer than 2 points");
    return arc;
}

} // namespace

Polyline sample_arc(Complex z_start, Complex z_end, const LatticeBasis& basis,
                    const SamplingBudget& budget) {
    return sample_arc_transported(z_start, z_end, basis, budget,
                                  MobiusMap::identity());
}

double flat_length(Complex z_start, Complex z_end,
                   const LatticeBasis& basis) {
    const double length = std::abs(z_end - z_start);
    if (length == 0.0) return 0.0;

    // Cross-check: integrate the image-side length element
    // |dw| / sqrt|4 (w-e1)(w-e2)(w-e3)| along the arc. Written in the
    // segment parameter this compares wp' against the defining cubic at
    // every node, so a drifting evaluator fails loudly here.
    static constexpr double nodes[8] = {
        0.01985507175123188, 0.10166676129318664, 0.2372337950418355,
        0.40828267875217505, 0.5917173212478249,  0.7627662049581645,
        0.8983332387068134,  0.9801449282487681};
    static constexpr double weights[8] = {
        0.05061426814518813, 0.11119051722668724, 0.15685332293894364,
        0.18134189168918097, 0.18134189168918097, 0.15685332293894364,
        0.11119051722668724, 0.05061426814518813};
    const RootTriple& roots = basis.roots();
    const int panels = 16;
    double integral = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double t0 = double(p) / panels, dt = 1.0 / panels;
        for (int k = 0; k < 8; ++k) {
            const double t = t0 + nodes[k] * dt;
            const WpValue val =
                wp_eval(z_start + t * (z_end - z_start), basis);
            if (val.is_pole)
                raise(ErrorCode::InvalidArguments,
                      "flat length quadrature hit a lattice point");
            const double cubic = std::sqrt(
                std::abs(4.0 * (val.p - roots.e1) * (val.p - roots.e2) *
                         (val.p - roots.e3)));
            integral += weights[k] * dt * std::abs(val.p_prime) / cubic;
        }
    }
    const double check = integral * length;
    if (std::abs(check - length) > 1e-8 * std::max(1.0, length))
        raise(ErrorCode::NonConvergence,
              "flat length cross-check failed: |dz| route " +
                  std::to_string(length) + " vs image route " +
                  std::to_string(check));
    return length;
}

namespace {

CanonicalConfiguration assemble(
    const std::array<SpherePoint, 4>& points, const IsotopyClass& cls,
    std::optional<std::array<long long, 2>> omega2_coeffs,
    const SamplingBudget& budget) {
    auto [T, roots] =
        normalize_quadruple(points[0], points[1], points[2], points[3]);
    CanonicalConfiguration config;
    config.points = points;
    config.cls = cls;
    config.budget = budget;
    config.transport = T;
    config.basis = lattice_from_roots(roots);
    config.pairing = class_pairing(cls);

    const auto coeffs =
        omega2_coeffs ? *omega2_coeffs : companion_coeffs(cls, config.basis);
    const auto [p, q] = coeffs;
    if (cls.r * q - cls.s * p != 1)
        raise(ErrorCode::InvalidArguments,
              "companion coefficients are not unimodular for the class");
    config.omega2_coeffs = coeffs;
    config.omega1 = double(cls.r) * config.basis.omega1_0() +
                    double(cls.s) * config.basis.omega2_0();
    config.omega2 = double(p) * config.basis.omega1_0() +
                    double(q) * config.basis.omega2_0();

    const MobiusMap back = T.inverse();
    config.arc0 = sample_arc_transported(Complex(0.0), config.omega1 * 0.5,
                                         config.basis, budget, back);
    config.arc1 = sample_arc_transported(
        config.omega2 * 0.5, (config.omega1 + config.omega2) * 0.5,
        config.basis, budget, back);

    // Pin arc endpoints to the designated input points exactly; the arcs
    // must realize the parity pairing.
    auto snap = [&](Polyline& arc, const std::array<int, 2>& pair) {
        const SpherePoint& pa = points[pair[0]];
        const SpherePoint& pb = points[pair[1]];
        SpherePoint& head = arc.samples.front();
        SpherePoint& tail = arc.samples.back();
        const double straight =
            chordal_distance(head, pa) + chordal_distance(tail, pb);
        const double crossed =
            chordal_distance(head, pb) + chordal_distance(tail, pa);
        if (std::min(straight, crossed) > 1e-6)
            raise(ErrorCode::LabelingFailure,
                  "arc endpoints do not match the pairing");
        if (straight <= crossed) {
            head = pa;
            tail = pb;
        } else {
            head = pb;
            tail = pa;
        }
    };
    snap(config.arc0, pairing_first(config.pairing));
    snap(config.arc1, pairing_second(config.pairing));

    config.flat_length0 =
        flat_length(Complex(0.0), config.omega1 * 0.5, config.basis);
    config.flat_length1 = flat_length(
        config.omega2 * 0.5, (config.omega1 + config.omega2) * 0.5,
        config.basis);
    config.annulus_modulus = (config.omega2 / config.omega1).imag() * 0.5;
    if (config.annulus_modulus <= 0.0)
        raise(ErrorCode::NonConvergence, "nonpositive annulus modulus");

    if (min_arc_separation(config) <= 0.0)
        raise(ErrorCode::NonConvergence, "sampled arcs are not disjoint");
    return config;
}

} // namespace

CanonicalConfiguration build_configuration(
    const std::array<SpherePoint, 4>& points, const IsotopyClass& cls,
    const SamplingBudget& budget) {
    return assemble(points, canonical_class(cls.r, cls.s), std::nullopt,
                    budget);
}

CanonicalConfiguration build_configuration_with_companion(
    const std::array<SpherePoint, 4>& points, const IsotopyClass& cls,
    std::array<long long, 2> omega2_coeffs, const SamplingBudget& budget) {
    return assemble(points, canonical_class(cls.r, cls.s), omega2_coeffs,
                    budget);
}

double min_arc_separation(const CanonicalConfiguration& config) {
    return chordal_min_distance(config.arc0, config.arc1);
}

} // namespace canarc
