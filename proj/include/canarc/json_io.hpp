#pragma once

#include <string>

#include "canarc/configuration.hpp"
#include "canarc/oracle.hpp"

namespace canarc {

/// Serialize a configuration to the canonical JSON document: fixed field
/// order, floats printed with 17 significant digits, "inf" tokens for the
/// point at infinity. Byte-deterministic for identical inputs.
std::string to_json(const CanonicalConfiguration& config);

/// Parse a configuration document. Arcs and metadata are taken from the
/// file; the normalization transport is recomputed from the points and the
/// stored lattice data is cross-checked against it.
CanonicalConfiguration from_json(const std::string& text);

/// Versioned JSON of a verification report (same number formatting).
std::string report_to_json(const VerificationReport& report);

} // namespace canarc
