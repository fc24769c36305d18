#pragma once

#include <array>
#include <complex>

#include "canarc/errors.hpp"

namespace canarc {

using Complex = std::complex<double>;

/// A point of the Riemann sphere: a finite complex value or the single
/// point at infinity.
class SpherePoint {
public:
    SpherePoint() : inf_(false), v_(0.0, 0.0) {}

    static SpherePoint infinity() {
        SpherePoint p;
        p.inf_ = true;
        return p;
    }

    static SpherePoint finite(Complex v) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            raise(ErrorCode::InvalidArguments,
                  "finite sphere point requires finite coordinates");
        SpherePoint p;
        p.v_ = v;
        return p;
    }

    bool is_infinity() const { return inf_; }

    /// Finite value; must not be called on the point at infinity.
    Complex value() const { return v_; }

    bool operator==(const SpherePoint& o) const {
        if (inf_ || o.inf_) return inf_ == o.inf_;
        return v_ == o.v_;
    }
    bool operator!=(const SpherePoint& o) const { return !(*this == o); }

private:
    bool inf_;
    Complex v_;
};

/// Stereographic embedding onto the unit sphere in R^3 (north pole = infinity).
inline std::array<double, 3> embed3(const SpherePoint& p) {
    if (p.is_infinity()) return {0.0, 0.0, 1.0};
    const Complex z = p.value();
    const double n2 = std::norm(z);
    const double d = 1.0 + n2;
    return {2.0 * z.real() / d, 2.0 * z.imag() / d, (n2 - 1.0) / d};
}

/// Chordal metric d(p,q) = 2|p-q| / sqrt((1+|p|^2)(1+|q|^2)), with the
/// standard limits at infinity. Equals the R^3 distance of the embeddings.
double chordal_distance(const SpherePoint& p, const SpherePoint& q);
double chordal_distance(Complex p, Complex q);

} // namespace canarc
