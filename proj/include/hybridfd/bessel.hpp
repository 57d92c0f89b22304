#pragma once

#include <cmath>
#include <complex>

#include "errors.hpp"

namespace hybridfd {

// J0 and Y0 via the classical Abramowitz & Stegun 9.4.1-9.4.3 polynomial
// approximations: series-like polynomials below x = 3, modulus/phase form
// above. Absolute error below ~1e-7 across the range, which is all the
// Hankel reference comparison needs.

inline double bessel_j0(double x) {
    const double ax = std::abs(x);
    if (ax < 3.0) {
        const double t = (ax / 3.0) * (ax / 3.0);
        return 1.0 + t * (-2.2499997 +
                          t * (1.2656208 +
                               t * (-0.3163866 +
                                    t * (0.0444479 + t * (-0.0039444 + t * 0.0002100)))));
    }
    const double s = 3.0 / ax;
    const double f0 = 0.79788456 +
                      s * (-0.00000077 +
                           s * (-0.00552740 +
                                s * (-0.00009512 +
                                     s * (0.00137237 + s * (-0.00072805 + s * 0.00014476)))));
    const double theta0 = ax - 0.78539816 +
                          s * (-0.04166397 +
                               s * (-0.00003954 +
                                    s * (0.00262573 +
                                         s * (-0.00054125 +
                                              s * (-0.00029333 + s * 0.00013558)))));
    return f0 * std::cos(theta0) / std::sqrt(ax);
}

inline double bessel_y0(double x) {
    if (x <= 0.0)
        throw validation_error("Y0 requires x > 0");
    if (x < 3.0) {
        const double t = (x / 3.0) * (x / 3.0);
        const double p = 0.36746691 +
                         t * (0.60559366 +
                              t * (-0.74350384 +
                                   t * (0.25300117 +
                                        t * (-0.04261214 + t * (0.00427916 - t * 0.00024846)))));
        return (2.0 / M_PI) * std::log(x / 2.0) * bessel_j0(x) + p;
    }
    const double s = 3.0 / x;
    const double f0 = 0.79788456 +
                      s * (-0.00000077 +
                           s * (-0.00552740 +
                                s * (-0.00009512 +
                                     s * (0.00137237 + s * (-0.00072805 + s * 0.00014476)))));
    const double theta0 = x - 0.78539816 +
                          s * (-0.04166397 +
                               s * (-0.00003954 +
                                    s * (0.00262573 +
                                         s * (-0.00054125 +
                                              s * (-0.00029333 + s * 0.00013558)))));
    return f0 * std::sin(theta0) / std::sqrt(x);
}

// Hankel function of the first kind, order zero: H0^(1) = J0 + i Y0.
inline std::complex<double> hankel1_0(double x) {
    return {bessel_j0(x), bessel_y0(x)};
}

} // namespace hybridfd
