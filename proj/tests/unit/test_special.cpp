#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fourl/errors.hpp"
#include "fourl/special.hpp"

using namespace fourl;

TEST_CASE("log Gamma") {
    CHECK(std::abs(logGamma(1.0)) < 1e-14);
    CHECK(std::abs(logGamma(0.5) - std::log(std::sqrt(std::numbers::pi))) < 1e-13);
    const cplx z(2, 3);
    cplx d = logGamma(z + 1.0) - logGamma(z) - std::log(z);
    d.imag(std::remainder(d.imag(), 2 * std::numbers::pi));
    CHECK(std::abs(d) < 1e-12);
    // duplication formula at 1/2 and 1: Gamma(1/2) Gamma(1) = 2^{0} sqrt(pi) Gamma(1)
    CHECK(std::abs(logGamma(cplx(3.7, 0)).real() - std::lgamma(3.7)) < 1e-12);
    CHECK_THROWS_AS(logGamma(-2.0), MathError);
}

TEST_CASE("digamma") {
    CHECK(std::abs(digamma(1.0) + 0.57721566490153286) < 1e-13);
    CHECK(std::abs(digamma(0.5) + 0.57721566490153286 + 2 * std::log(2.0)) < 1e-13);
}

TEST_CASE("Bessel functions") {
    CHECK(std::abs(besselJ0(1e-8) - 1.0) < 1e-12);
    // first zero of J0 by bisection on the implementation
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (besselJ0(lo) * besselJ0(mid) <= 0 ? hi : lo) = mid;
    }
    CHECK(std::abs(lo - 2.404825557695773) < 1e-9);
    for (double x : {0.5, 5.0, 50.0}) {
        const double h = 1e-5 * x;
        const double dJ = (besselJ0(x + h) - besselJ0(x - h)) / (2 * h);
        const double dY = (besselY0(x + h) - besselY0(x - h)) / (2 * h);
        const double w = besselJ0(x) * dY - dJ * besselY0(x);
        CHECK(std::abs(w - 2 / (std::numbers::pi * x)) < 1e-9);
    }
    CHECK(std::abs(besselK0(1.0) - 0.42102443824070834) < 1e-13);
    CHECK(std::abs(besselY0(1.0) - 0.08825696421567696) < 1e-13);
    CHECK(std::abs(besselJ0(30.0) - (-0.08636798358104487)) < 1e-13);
    CHECK_THROWS_AS(bessel(BesselKind::K0, 0.0), UsageError);
}

TEST_CASE("quadrature") {
    CHECK(std::abs(integrate([](double x) { return x; }, 0, 1, 1e-13).value - 0.5) < 1e-12);
    CHECK(std::abs(integrate(besselK0, 0, kInf, 1e-11).value - std::numbers::pi / 2) < 1e-8);
    const BumpFunction g(10, 20);
    const double I = integrate([&](double x) { return g(x); }, 10, 20, 1e-12).value;
    CHECK(I > 0);
    CHECK(I < 10);
    CHECK(std::abs(I - g.integral()) < 1e-10);
    CHECK(g(15) == doctest::Approx(1.0));
    CHECK(g(9.99) == 0.0);
    CHECK(g(20.5) == 0.0);
}

TEST_CASE("weight V") {
    const WeightV V(0.0);
    // V(x) tends to the residue 1 only slowly: V(1e-6) = 0.8859539336...
    CHECK(std::abs(V(1e-6) - 0.88595393361) < 1e-9);
    CHECK(std::abs(V(1e6)) < 1e-6);
    const WeightV V2(0.0, 2.0);
    CHECK(std::abs(V(1.0) - V2(1.0)) < 1e-8);
    const WeightV Vt(3.0);
    CHECK(std::abs(Vt.g(0.0) - cplx(1.0)) < 1e-14);
    const WeightVTable tab(V, 1e-3, 1e4);
    for (double x : {0.01, 0.7, 3.0, 250.0}) CHECK(std::abs(tab(x) - V(x)) < 1e-12);
}
