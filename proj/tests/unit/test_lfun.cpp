#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fourl/errors.hpp"
#include "fourl/lfun.hpp"

using namespace fourl;

namespace {

const double kPi = std::numbers::pi;

DirichletCharacter withOrder(i64 m, i64 order) {
    for (const auto& c : evenPrimitiveCharacters(m))
        if (c.order() == order) return c;
    FAIL("no such character");
    return {};
}

}  // namespace

TEST_CASE("Hurwitz zeta") {
    CHECK(std::abs(hurwitzZeta(2.0, 1.0) - kPi * kPi / 6) < 1e-12);
    for (double a : {0.1, 0.5, 0.9}) CHECK(std::abs(hurwitzZeta(0.0, a) - (0.5 - a)) < 1e-12);
    CHECK(std::abs(hurwitzZeta(2.0, 0.5) - kPi * kPi / 2) < 1e-10);
}

TEST_CASE("L-values") {
    CHECK(std::abs(lvalue(DirichletCharacter(), 2.0).value - kPi * kPi / 6) < 1e-12);
    const auto q5 = withOrder(5, 2);
    const double closed = 2 / std::sqrt(5.0) * std::log((1 + std::sqrt(5.0)) / 2);
    CHECK(std::abs(lvalue(q5, 1.0).value - closed) < 1e-12);
    CHECK(std::abs(lvalueAt1(q5) - closed) < 1e-12);
    // smoothed sum with weight exp(-(n/X)^2): the first correction is X^{-2} L(-3/2, chi)
    double s = 0.0;
    const double X = 1e5;
    for (int n = 1; n <= 700000; ++n) s += q5(n).real() / std::sqrt(double(n)) * std::exp(-(n / X) * (n / X));
    CHECK(std::abs(s - lvalue(q5, 0.5).value.real()) < 1e-8);
    // Euler product against Hurwitz at s = 2
    const auto e = lvalueEuler(q5, 2.0, 100000);
    CHECK(std::abs(e.value - lvalue(q5, 2.0).value) <= e.error + 1e-12);
}

TEST_CASE("functional equation") {
    CHECK(feResidual(withOrder(5, 2), 0.3) < 1e-9);
    const auto ep13 = evenPrimitiveCharacters(13);
    for (const auto& c : ep13) CHECK(feResidual(c, cplx(0.3, 0.7)) < 1e-9);
    // at s = 0 the residual is |Lambda(1/2)| |1 - eps e^{-2i arg Lambda}|
    for (const auto& c : ep13) {
        const cplx L = completedLambda(c, 0.0);
        const cplx Lbar = completedLambda(c.conj(), 0.0);
        CHECK(std::abs(Lbar - std::conj(L)) < 1e-12);
        CHECK(feResidual(c, 0.0) == doctest::Approx(std::abs(L - epsilon(c) * std::conj(L))).epsilon(1e-9));
    }
}

TEST_CASE("approximate functional equation") {
    SUBCASE("q = 13, trivial D") {
        const auto Q = makeQuadruple(13, {1, 1, 1, 1}, 0.0, {1, 1});
        for (const auto& chi : evenPrimitiveCharacters(13))
            CHECK(std::abs(afeProductValue(Q, chi) - directProductValue(Q, chi)) < 1e-8);
    }
    SUBCASE("q = 11, D = (1,5,7,1), t = 0.5") {
        Quadruple Q;
        Q.q = 11;
        Q.D = {1, 5, 7, 1};
        Q.chi = {DirichletCharacter(), withOrder(5, 2), withOrder(7, 3), DirichletCharacter()};
        Q.t = 0.5;
        REQUIRE_NOTHROW(Q.validate());
        const AfeEngine eng(Q);
        for (const auto& chi : evenPrimitiveCharacters(11)) CHECK(std::abs(eng.value(chi) - directProductValue(Q, chi)) < 1e-7);

        // conjugation: swapping the roles (1,2) <-> (3,4) conjugates the product at the same chi
        Quadruple R = Q;
        R.D = {Q.D[2], Q.D[3], Q.D[0], Q.D[1]};
        R.chi = {Q.chi[2], Q.chi[3], Q.chi[0], Q.chi[1]};
        const AfeEngine engR(R);
        for (const auto& chi : evenPrimitiveCharacters(11))
            CHECK(std::abs(engR.value(chi) - std::conj(eng.value(chi))) < 1e-9);
    }
}

TEST_CASE("root number") {
    const auto Q1 = makeQuadruple(11, {1, 1, 1, 1}, 0.0, {1, 1});
    CHECK(std::abs(rootNumber(Q1) - cplx(1.0)) < 1e-15);
    Quadruple Q;
    Q.q = 11;
    Q.D = {1, 5, 1, 1};
    Q.chi[1] = withOrder(5, 2);
    CHECK(std::abs(rootNumber(Q) - Q.chi[1](11)) < 1e-12);
}

TEST_CASE("log-bound diagnostic") {
    const auto lam = logBoundLambda();
    CHECK(std::abs(std::exp(-lam) - lam - lam * lam / 2) < 1e-12);
    const auto c5 = evenPrimitiveCharacters(5)[0];
    CHECK(grhLogBoundGap(c5, 0.0, 1e3).gap >= -0.1);
    for (const auto& c : evenPrimitiveCharacters(13)) CHECK(grhLogBoundGap(c, 1.0, 1e4).gap >= -0.1);
    for (const auto& c : evenPrimitiveCharacters(13))
        CHECK(grhLogBoundGap(c, 0.0, 1e4).rhs <= grhLogBoundGap(c, 0.0, 1e2).rhs + 2);
}
