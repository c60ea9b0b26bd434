#include <cmath>
#include <numbers>

#include "fourl/errors.hpp"
#include "fourl/special.hpp"

namespace fourl {

namespace {

using ld = long double;
constexpr ld kEuler = 0.577215664901532860606512090082402431L;
constexpr double kCrossover = 17.0;

// J0 and Y0 from their power series.
void seriesJY(double xd, double* j0, double* y0) {
    const ld x = xd, q = x * x / 4;
    ld term = 1, J = 1, S = 0, H = 0;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<ld>(k) * k);
        H += 1.0L / k;
        J += term;
        S -= term * H;
        if (std::fabs(term) * (1 + H) < 1e-22L * std::fabs(J) && k > 3) break;
    }
    *j0 = static_cast<double>(J);
    if (y0) {
        const ld two_pi = 2 / std::numbers::pi_v<ld>;
        *y0 = static_cast<double>(two_pi * ((std::log(x / 2) + kEuler) * J + S));
    }
}

// Hankel asymptotic expansion: P, Q with J0 = sqrt(2/(pi x)) (P cos w - Q sin w), w = x - pi/4.
void hankelPQ(double x, double* P, double* Q) {
    double p = 1.0, q = 0.0, a = 1.0, prev = 1.0;
    for (int k = 1; k < 80; ++k) {
        double f = (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        a *= f;
        if (a > prev) break;
        prev = a;
        int r = k % 4;
        if (r == 1) q -= a;
        else if (r == 2) p -= a;
        else if (r == 3) q += a;
        else p += a;
        if (a < 1e-18) break;
    }
    *P = p;
    *Q = q;
}

void asymptoticJY(double x, double* j0, double* y0) {
    double P, Q;
    hankelPQ(x, &P, &Q);
    const double c = std::cos(x), s = std::sin(x);
    const double cw = (c + s) / std::numbers::sqrt2, sw = (s - c) / std::numbers::sqrt2;
    const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
    *j0 = amp * (P * cw - Q * sw);
    if (y0) *y0 = amp * (P * sw + Q * cw);
}

double k0Series(double xd) {
    const ld x = xd, q = x * x / 4;
    ld term = 1, I = 1, S = 0, H = 0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<ld>(k) * k);
        H += 1.0L / k;
        I += term;
        S += term * H;
        if (term * (1 + H) < 1e-22L * I) break;
    }
    return static_cast<double>(-(std::log(x / 2) + kEuler) * I + S);
}

// Steed's continued fraction (Temme's CF2) for K_0, valid for x >= 2.
double k0ContinuedFraction(double x) {
    double b = 2.0 * (1.0 + x), d = 1.0 / b, h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    double q = a1, c = a1, a = -a1, s = 1.0 + q * delh;
    for (int i = 1; i < 100000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < 1e-17) break;
    }
    return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
}

void requirePositive(double x) {
    if (!(x > 0.0)) throw UsageError("bessel: argument must be positive");
}

}  // namespace

double besselJ0(double x) {
    requirePositive(x);
    double j;
    if (x <= kCrossover) seriesJY(x, &j, nullptr);
    else asymptoticJY(x, &j, nullptr);
    return j;
}

double besselY0(double x) {
    requirePositive(x);
    double j, y;
    if (x <= kCrossover) seriesJY(x, &j, &y);
    else asymptoticJY(x, &j, &y);
    return y;
}

double besselK0(double x) {
    requirePositive(x);
    if (x <= 2.0) return k0Series(x);
    if (x > 745.0) return 0.0;
    return k0ContinuedFraction(x);
}

double bessel(BesselKind kind, double x) {
    switch (kind) {
        case BesselKind::J0: return besselJ0(x);
        case BesselKind::Y0: return besselY0(x);
        case BesselKind::K0: return besselK0(x);
    }
    return 0.0;
}

}  // namespace fourl
