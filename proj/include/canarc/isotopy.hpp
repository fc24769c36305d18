#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "canarc/elliptic.hpp"

namespace canarc {

/// Isotopy class of the arc pair, encoded as the coprime slope pair (r,s)
/// selecting the primitive period omega1 = r*omega1_0 + s*omega2_0.
/// Canonical form: s >= 0, and r = 1 when s = 0.
struct IsotopyClass {
    long long r = 1;
    long long s = 0;

    bool operator==(const IsotopyClass&) const = default;
};

/// One of the three matchings of the marked points {0,1,2,3}.
enum class Pairing { P01_23, P02_13, P03_12 };

std::string pairing_name(Pairing p);                 // "01|23" etc.
Pairing pairing_from_name(const std::string& name);  // throws ParseError

/// Index pairs of a matching: first() = {0, j}, second() = the other two.
std::array<int, 2> pairing_first(Pairing p);
std::array<int, 2> pairing_second(Pairing p);

/// Canonical representative of the slope (r,s). Non-primitive input is an
/// error (NotPrimitive), never silently reduced.
IsotopyClass canonical_class(long long r, long long s);

/// Matching induced by the class parity:
/// (1,0) mod 2 -> 01|23, (0,1) -> 02|13, (1,1) -> 03|12.
Pairing class_pairing(const IsotopyClass& cls);

/// Integer coefficients (p,q) of the companion period
/// omega2 = p*omega1_0 + q*omega2_0 with r*q - s*p = 1, reduced by
/// multiples of omega1 to minimize |omega2|; ties broken toward
/// nonnegative Re(omega2/omega1).
std::array<long long, 2> companion_coeffs(const IsotopyClass& cls,
                                          const LatticeBasis& basis);

/// The companion period itself.
Complex companion_period(const IsotopyClass& cls, const LatticeBasis& basis);

/// All canonical classes with |r| <= max_height and 0 <= s <= max_height,
/// sorted by (s, r).
std::vector<IsotopyClass> enumerate_classes(long long max_height);

} // namespace canarc
