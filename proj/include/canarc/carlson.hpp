#pragma once

#include "canarc/sphere.hpp"

namespace canarc {

/// Carlson symmetric elliptic integral
///   R_F(x,y,z) = (1/2) * int_0^inf dt / sqrt((t+x)(t+y)(t+z))
/// computed by the duplication iteration with principal square roots,
/// to about 1e-13 relative accuracy.
///
/// At most one argument may be zero. Arguments must stay clear of the
/// degenerate branch configuration (all arguments on the negative real
/// axis); principal square roots lose the contraction there.
Complex carlson_rf(Complex x, Complex y, Complex z);

} // namespace canarc
