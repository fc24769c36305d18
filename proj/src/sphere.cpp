#include "canarc/sphere.hpp"

#include <cmath>

namespace canarc {

double chordal_distance(Complex p, Complex q) {
    const double np = std::hypot(1.0, std::abs(p));
    const double nq = std::hypot(1.0, std::abs(q));
    return 2.0 * std::abs(p - q) / (np * nq);
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
    if (p.is_infinity() && q.is_infinity()) return 0.0;
    if (p.is_infinity()) return 2.0 / std::hypot(1.0, std::abs(q.value()));
    if (q.is_infinity()) return 2.0 / std::hypot(1.0, std::abs(p.value()));
    return chordal_distance(p.value(), q.value());
}

} // namespace canarc
