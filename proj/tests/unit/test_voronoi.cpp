#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fourl/errors.hpp"
#include "fourl/voronoi.hpp"

using namespace fourl;

namespace {

VoronoiConfig config(i64 a, i64 c, DirichletCharacter x1, DirichletCharacter x2, double A = 10, double B = 20) {
    VoronoiConfig v;
    v.a = a;
    v.c = c;
    v.chi1 = std::move(x1);
    v.chi2 = std::move(x2);
    v.g = BumpFunction(A, B);
    return v;
}

const DirichletCharacter kTriv;

}  // namespace

TEST_CASE("left-hand side") {
    const auto q5 = primitiveCharacter(5);
    auto cfg = config(1, 3, kTriv, q5);
    cplx direct = 0.0;
    for (i64 n = 11; n <= 19; ++n)
        direct += convolve(kTriv, q5, n) * std::polar(1.0, 2 * std::numbers::pi * double(n) / 3) * cfg.g(double(n));
    CHECK(std::abs(lhsSum(cfg) - direct) < 1e-13);
    auto shifted = cfg;
    shifted.a += 3;
    CHECK(std::abs(lhsSum(shifted) - lhsSum(cfg)) < 1e-13);
    auto zero = cfg;
    zero.g = BumpFunction::zero();
    CHECK(lhsSum(zero) == cplx(0.0));
}

TEST_CASE("CRT split and prefactor") {
    const auto q3 = primitiveCharacter(3, true), q5 = primitiveCharacter(5);
    const auto cfg = config(1, 15, q3, q5);
    const auto sp = voronoiSplit(cfg);
    CHECK(sp.D1p == 1);
    CHECK(sp.D2p == 1);
    CHECK(sp.g1 == 3);
    CHECK(sp.g2 == 5);
    for (const auto& e : voronoiGrid()) CHECK(std::abs(voronoiPrefactor(e.config) - voronoiPrefactorDirect(e.config)) < 1e-12);
}

TEST_CASE("branch structure") {
    const auto q3 = primitiveCharacter(3, true), q5 = primitiveCharacter(5);
    SUBCASE("no main terms when neither modulus divides c") {
        auto cfg = config(1, 7, q3, q5, 10, 40);
        const auto r = rhsValue(cfg);
        CHECK(r.mainTerms[0] == cplx(0.0));
        CHECK(r.mainTerms[1] == cplx(0.0));
    }
    SUBCASE("even product kills the J0 branch") {
        const auto r = rhsValue(config(1, 3, kTriv, q5));
        CHECK(r.branches[1] == cplx(0.0));
        CHECK(r.tailEstimate < 1e-8);
        CHECK(std::isfinite(std::abs(r.value)));
    }
    SUBCASE("odd product has a J0 branch") {
        const auto r = rhsValue(config(1, 5, kTriv, primitiveCharacter(7, true)));
        CHECK(std::abs(r.branches[1]) > 0);
    }
    CHECK_THROWS_AS(rhsValue(config(1, 3, kTriv, kTriv)), UsageError);
    CHECK_THROWS_AS(config(3, 6, kTriv, q5).validate(), UsageError);
    CHECK_THROWS_AS(config(1, 7, q5, q5).validate(), UsageError);
}

TEST_CASE("Voronoi summation") {
    const auto q3 = primitiveCharacter(3, true), q5 = primitiveCharacter(5);
    CHECK(verifyVoronoi(config(1, 3, kTriv, q5)).residual < 1e-6);
    CHECK(verifyVoronoi(config(2, 5, kTriv, q5)).residual < 1e-6);
    CHECK(verifyVoronoi(config(1, 15, q3, q5)).residual < 1e-5);
}
