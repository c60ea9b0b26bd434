#include <cmath>
#include <numbers>

#include "fourl/errors.hpp"
#include "fourl/special.hpp"

namespace fourl {

namespace {

// B_{2k} / (2k (2k - 1)), k = 1..10
constexpr double kStirling[] = {
    1.0 / 12.0,           -1.0 / 360.0,          1.0 / 1260.0,          -1.0 / 1680.0,
    1.0 / 1188.0,         -691.0 / 360360.0,     1.0 / 156.0,           -3617.0 / 122400.0,
    43867.0 / 244188.0,   -174611.0 / 125400.0,
};

}  // namespace

cplx logGamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw MathError("logGamma: pole at a non-positive integer");
    cplx shift = 0.0;
    while (z.real() < 15.0 || std::abs(z) < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    const cplx iz = 1.0 / z, iz2 = iz * iz;
    cplx series = 0.0, p = iz;
    for (double c : kStirling) {
        series += c * p;
        p *= iz2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift;
}

double digamma(double x) {
    if (!(x > 0.0)) throw UsageError("digamma: argument must be positive");
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double ix2 = 1.0 / (x * x);
    // B_{2k} / (2k)
    const double c[] = {1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0,
                        -691.0 / 32760.0, 1.0 / 12.0};
    double s = 0.0, p = ix2;
    for (double ck : c) {
        s += ck * p;
        p *= ix2;
    }
    return acc + std::log(x) - 0.5 / x - s;
}

}  // namespace fourl
