#include "canarc/carlson.hpp"

#include <algorithm>
#include <cmath>

namespace canarc {

Complex carlson_rf(Complex x, Complex y, Complex z) {
    int zeros = 0;
    for (const Complex& v : {x, y, z})
        if (v == Complex(0.0)) ++zeros;
    if (zeros >= 2)
        raise(ErrorCode::InvalidArguments,
              "R_F requires at most one zero argument");

    const Complex x0 = x, y0 = y;
    const Complex a0 = (x + y + z) / 3.0;
    const double m0 =
        std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)});
    if (m0 == 0.0) return 1.0 / std::sqrt(a0); // equal arguments

    // Iterate until the series argument is small enough for the
    // fifth-order expansion to reach ~1e-14 relative error.
    const double q = std::pow(3.0e-14, -1.0 / 6.0) * m0;
    Complex a = a0;
    double quarter_pow = 1.0; // 4^{-m}
    int iter = 0;
    while (q * quarter_pow > std::abs(a)) {
        if (++iter > 120)
            raise(ErrorCode::NonConvergence,
                  "R_F duplication failed to contract");
        const Complex sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const Complex lambda = sx * sy + sy * sz + sz * sx;
        x = (x + lambda) * 0.25;
        y = (y + lambda) * 0.25;
        z = (z + lambda) * 0.25;
        a = (a + lambda) * 0.25;
        quarter_pow *= 0.25;
    }

    const Complex X = (a0 - x0) * quarter_pow / a;
    const Complex Y = (a0 - y0) * quarter_pow / a;
    const Complex Z = -X - Y;
    const Complex e2 = X * Y - Z * Z;
    const Complex e3 = X * Y * Z;
    const Complex series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 -
                           3.0 * e2 * e3 / 44.0;
    return series / std::sqrt(a);
}

} // namespace canarc
