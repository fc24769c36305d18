#pragma once

#include <string>

#include "canarc/configuration.hpp"

namespace canarc {

/// SVG 1.1 figure of the configuration: both arcs and the four marked
/// points in a square viewport around the arcs' bounding region. Arcs are
/// split at infinity samples; rays toward infinity are clipped at the
/// viewport edge and end in a marker.
std::string render_svg(const CanonicalConfiguration& config, int width = 640);

} // namespace canarc
