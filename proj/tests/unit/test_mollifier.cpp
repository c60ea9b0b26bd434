#include "doctest.h"

#include <cmath>

#include "fourl/errors.hpp"
#include "fourl/mollifier.hpp"

using namespace fourl;

namespace {

double beta(double x, i64 q) { return std::log(x) / std::log(double(q)); }

}  // namespace

TEST_CASE("lambda") {
    const double lam = solveLambda();
    const auto f = [](double x) { return std::exp(-x) - x - x * x / 2; };
    CHECK(std::abs(f(lam)) < 1e-12);
    CHECK(lam == doctest::Approx(0.4912).epsilon(1e-4));
    int changes = 0;
    for (int i = 0; i < 1000; ++i) changes += (f(i * 1e-3) > 0) != (f((i + 1) * 1e-3) > 0);
    CHECK(changes == 1);
}

TEST_CASE("smoothing weights") {
    const auto sp = customSpec(101, 2, {beta(50.0, 101), beta(1000.0, 101)}, {3, 2});
    CHECK(smoothingA(47, 0, sp) < 0.02);
    CHECK(smoothingA(47, 0, sp) > 0.0);
    // a(p; u) = (1 - x) exp(-lambda x), x = log p/(beta_u log q); both factors tend to 1 as beta_u grows
    const auto wide = customSpec(101, 2, {2000.0}, {3});
    const double x = std::log(2.0) / (2000.0 * std::log(101.0));
    CHECK(smoothingA(2, 0, wide) == doctest::Approx((1 - x) * std::exp(-sp.lambda * x)).epsilon(1e-12));
    CHECK(smoothingA(2, 0, wide) > 0.9998);
    CHECK(smoothingAn(12, 1, sp) == doctest::Approx(smoothingA(2, 1, sp) * smoothingA(2, 1, sp) * smoothingA(3, 1, sp)));
    CHECK_THROWS_AS(smoothingA(53, 0, sp), UsageError);
    CHECK_THROWS_AS(smoothingB(11, 0, sp), UsageError);
}

TEST_CASE("nu and alpha") {
    CHECK(nuAlpha(49, 3, 4).nu == doctest::Approx(0.5));
    for (int k = 1; k <= 6; ++k) CHECK(nuAlpha(7, k, 2).alpha == doctest::Approx(-k));
    CHECK(nuAlpha(1, 4, 2).alpha == doctest::Approx(1.0));
    CHECK(nuAlpha(1, 4, 2).nu == doctest::Approx(1.0));
    // p^2 must split into two parts: C(k, 2) ways with weight (+1)(... ) = mu(p)^2
    CHECK(nuAlpha(49, 3, 4).alpha == doctest::Approx(3.0));
    // no cap against a cap of 1 for n = 6 and k = 1
    CHECK(nuAlpha(6, 1, -1).alpha == doctest::Approx(1.0));
    CHECK(nuAlpha(6, 1, 1).alpha == doctest::Approx(0.0));
}

TEST_CASE("mollifier coefficients") {
    const auto sp = scaledSpec(101, 6);
    const auto M = buildMollifier(sp);
    REQUIRE(M.coeff.count(1));
    CHECK(M.coeff.at(1) == doctest::Approx(1.0));
    for (int j = 0; j <= sp.K; ++j)
        for (i64 p : sp.blockPrimes(j)) {
            REQUIRE(M.coeff.count(p));
            CHECK(M.coeff.at(p) == doctest::Approx(-smoothingA(p, sp.K, sp)).epsilon(1e-12));
        }
    for (const auto& [n, c] : M.coeff)
        for (const auto& [p, e] : factorize(n)) {
            CHECK(e == 1);
            (void)c;
        }
}

TEST_CASE("power expansion") {
    const auto sp = customSpec(101, 3, {beta(7.0, 101), beta(50.0, 101)}, {3, 2});
    const auto chars = evenPrimitiveCharacters(101);
    for (int j = 0; j <= sp.K; ++j) CHECK(verifyPowerExpansion(sp, j, 3, chars[2], 0.7).residual < 1e-10);
}

TEST_CASE("truncated exponential and D") {
    CHECK(truncExp(2, 1.0) == doctest::Approx(2.5));
    CHECK(std::abs(truncExp(40, 1.0) - std::exp(1.0)) < 1e-12);
    for (int i = -200; i <= 200; ++i) CHECK(truncExp(6, i * 0.1) > 0);
    const auto sp = scaledSpec(101, 6);
    for (const auto& chi : evenPrimitiveCharacters(101))
        for (int j = 0; j <= sp.K; ++j) CHECK(factorD(chi, sp, j, 6, 0.0) > 0);
}

TEST_CASE("parameter gates") {
    const auto pd = paperDefaultSpec(101, 6);
    CHECK(pd.paperDefaults);
    CHECK(parameterGates(pd).holds);
    CHECK(!pd.flags.empty());
    auto bad = customSpec(101, 6, {0.5}, {4});
    CHECK(!parameterGates(bad).holds);
    const auto chi = evenPrimitiveCharacters(101)[0];
    CHECK_NOTHROW(factorD(chi, bad, 0, 6, 0.0));
    bad.paperDefaults = true;
    CHECK_THROWS_AS(factorD(chi, bad, 0, 6, 0.0), MathError);
    CHECK_THROWS_AS(factorS(chi, bad, 0, 6, 0.0), MathError);
    CHECK_THROWS_AS(customSpec(101, 2, {0.5, 0.4}, {2, 2}), UsageError);
}

TEST_CASE("Holder demonstration") {
    const auto h = holderDemo(scaledSpec(101, 6), {1, 5, 7, 11}, 0.0);
    CHECK(h.characterCount == 49);
    CHECK(h.holds);
    CHECK(h.lhs >= h.rhs);
}
