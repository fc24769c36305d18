#include "canarc/isotopy.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

namespace canarc {

std::string pairing_name(Pairing p) {
    switch (p) {
        case Pairing::P01_23: return "01|23";
        case Pairing::P02_13: return "02|13";
        case Pairing::P03_12: return "03|12";
    }
    return "";
}

Pairing pairing_from_name(const std::string& name) {
    if (name == "01|23") return Pairing::P01_23;
    if (name == "02|13") return Pairing::P02_13;
    if (name == "03|12") return Pairing::P03_12;
    raise(ErrorCode::ParseError, "unknown pairing '" + name + "'");
}

std::array<int, 2> pairing_first(Pairing p) {
    switch (p) {
        case Pairing::P01_23: return {0, 1};
        case Pairing::P02_13: return {0, 2};
        case Pairing::P03_12: return {0, 3};
    }
    return {0, 1};
}

std::array<int, 2> pairing_second(Pairing p) {
    switch (p) {
        case Pairing::P01_23: return {2, 3};
        case Pairing::P02_13: return {1, 3};
        case Pairing::P03_12: return {1, 2};
    }
    return {2, 3};
}

IsotopyClass canonical_class(long long r, long long s) {
    if (std::gcd(std::abs(r), std::abs(s)) != 1)
        raise(ErrorCode::NotPrimitive,
              "(" + std::to_string(r) + "," + std::to_string(s) +
                  ") is not a primitive pair");
    if (s < 0 || (s == 0 && r < 0)) {
        r = -r;
        s = -s;
    }
    return IsotopyClass{r, s};
}

Pairing class_pairing(const IsotopyClass& cls) {
    const int rp = int(((cls.r % 2) + 2) % 2);
    const int sp = int(((cls.s % 2) + 2) % 2);
    if (rp == 1 && sp == 0) return Pairing::P01_23;
    if (rp == 0 && sp == 1) return Pairing::P02_13;
    return Pairing::P03_12; // (1,1); (0,0) impossible for a primitive pair
}

namespace {

// Extended Euclid: returns (x, y) with x*a + y*b = gcd(a, b).
std::array<long long, 2> ext_gcd(long long a, long long b) {
    long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        const long long q = a / b;
        std::tie(a, b) = std::make_tuple(b, a - q * b);
        std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_tuple(y1, y0 - q * y1);
    }
    if (a < 0) {
        x0 = -x0;
        y0 = -y0;
    }
    return {x0, y0};
}

} // namespace

std::array<long long, 2> companion_coeffs(const IsotopyClass& cls,
                                          const LatticeBasis& basis) {
    // r*q - s*p = 1 with (p, q) from the Bezout identity.
    const auto [x, y] = ext_gcd(cls.r, cls.s);
    long long p = -y, q = x;

    const Complex omega1 =
        double(cls.r) * basis.omega1_0() + double(cls.s) * basis.omega2_0();
    auto omega2_of = [&](long long pp, long long qq) {
        return double(pp) * basis.omega1_0() + double(qq) * basis.omega2_0();
    };

    // Reduce by multiples of omega1 to the shortest companion; break ties
    // toward nonnegative Re(omega2/omega1).
    const Complex w2 = omega2_of(p, q);
    const double k0 =
        std::round(-(w2 * std::conj(omega1)).real() / std::norm(omega1));
    long long best_p = p, best_q = q;
    double best_len = std::numeric_limits<double>::infinity();
    double best_re = -std::numeric_limits<double>::infinity();
    for (long long k = (long long)k0 - 2; k <= (long long)k0 + 2; ++k) {
        const long long cp = p + k * cls.r, cq = q + k * cls.s;
        const Complex cw = omega2_of(cp, cq);
        const double len = std::abs(cw);
        const double re = (cw / omega1).real();
        const double tol = 1e-12 * std::abs(omega1);
        if (len < best_len - tol ||
            (len < best_len + tol && re > best_re)) {
            best_len = len;
            best_re = re;
            best_p = cp;
            best_q = cq;
        }
    }
    return {best_p, best_q};
}

Complex companion_period(const IsotopyClass& cls, const LatticeBasis& basis) {
    const auto [p, q] = companion_coeffs(cls, basis);
    return double(p) * basis.omega1_0() + double(q) * basis.omega2_0();
}

std::vector<IsotopyClass> enumerate_classes(long long max_height) {
    if (max_height < 1)
        raise(ErrorCode::InvalidArguments, "max height must be >= 1");
    std::vector<IsotopyClass> out;
    for (long long s = 0; s <= max_height; ++s) {
        for (long long r = -max_height; r <= max_height; ++r) {
            if (std::gcd(std::abs(r), std::abs(s)) != 1) continue;
            if (s == 0 && r != 1) continue;
            out.push_back(IsotopyClass{r, s});
        }
    }
    return out;
}

} // namespace canarc
