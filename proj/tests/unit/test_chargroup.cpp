#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fourl/chargroup.hpp"
#include "fourl/errors.hpp"

using namespace fourl;

namespace {

DirichletCharacter withOrder(i64 m, i64 order, bool even) {
    for (const auto& c : characterTable(m))
        if (c.order() == order && c.isEven() == even) return c;
    FAIL("no such character");
    return {};
}

}  // namespace

TEST_CASE("arith helpers") {
    CHECK(gcd(12, 18) == 6);
    CHECK(invmod(3, 7) == 5);
    CHECK(eulerPhi(36) == 12);
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
    CHECK(isSquarefree(385));
    CHECK(crt(2, 3, 3, 5) == 8);
}

TEST_CASE("character table sizes and parity") {
    SUBCASE("m = 1") {
        const auto t = characterTable(1);
        REQUIRE(t.size() == 1);
        CHECK(t[0].isEven());
        CHECK(t[0].isPrimitive());
        CHECK(t[0].conductor() == 1);
    }
    SUBCASE("m = 5") {
        const auto t = characterTable(5);
        CHECK(t.size() == 4);
        int even = 0;
        for (const auto& c : t) even += c.isEven();
        CHECK(even == 2);
        CHECK(evenPrimitiveCharacters(5).size() == 1);
    }
    SUBCASE("m = 7") {
        CHECK(characterTable(7).size() == 6);
        const auto ep = evenPrimitiveCharacters(7);
        REQUIRE(ep.size() == 2);
        for (const auto& c : ep) CHECK(c.order() == 3);
    }
}

TEST_CASE("conductor agrees with the induction oracle") {
    for (i64 m : {8, 12, 15, 36, 45, 60, 63})
        for (const auto& c : characterTable(m)) CHECK(c.conductor() == conductorByInduction(c));
}

TEST_CASE("character values") {
    const auto principal = DirichletCharacter::principal(5);
    CHECK(std::abs(principal(7) - cplx(1.0)) < 1e-15);
    const auto quad = withOrder(5, 2, true);
    CHECK(std::abs(quad(2) - cplx(-1.0)) < 1e-15);
    for (const auto& c : characterTable(5)) CHECK(c(10) == cplx(0.0));
}

TEST_CASE("Gauss sums") {
    CHECK(std::abs(gaussSum(DirichletCharacter()) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(epsilon(DirichletCharacter()) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(gaussSum(withOrder(5, 2, true)) - std::sqrt(5.0)) < 1e-12);
    // principal mod 6: tau = c_6(1) = mu(6) = 1
    CHECK(std::abs(gaussSum(DirichletCharacter::principal(6)) - cplx(1.0)) < 1e-12);
    for (i64 m : {13, 40, 77})
        for (const auto& c : characterTable(m))
            if (c.isPrimitive()) CHECK(std::abs(std::abs(gaussSum(c)) - std::sqrt(double(m))) < 1e-10);
}

TEST_CASE("CRT factorization") {
    const auto q3 = withOrder(3, 2, false), q5 = withOrder(5, 2, true);
    const auto chi = multiply(q3, q5);
    CHECK(chi.modulus() == 15);
    const auto [a, b] = crtFactor(chi, 3, 5);
    for (i64 n = 1; n <= 15; ++n) CHECK(std::abs(a(n) * b(n) - chi(n)) < 1e-14);
    CHECK(a == q3);
    CHECK(b == q5);

    const auto [c, d] = crtFactor(q5, 5, 1);
    CHECK(c == q5);
    CHECK(d.modulus() == 1);

    const auto [p2, p3] = crtFactor(DirichletCharacter::principal(6), 2, 3);
    CHECK(p2.isPrincipal());
    CHECK(p3.isPrincipal());
}

TEST_CASE("Dirichlet convolution") {
    const DirichletCharacter triv;
    CHECK(std::abs(convolve(triv, triv, 1) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(convolve(triv, triv, 12) - cplx(6.0)) < 1e-15);
    CHECK(std::abs(convolve(triv, withOrder(5, 2, true), 4) - cplx(1.0)) < 1e-15);
}

TEST_CASE("Kloosterman and Ramanujan sums") {
    CHECK(std::abs(kloosterman(1, 1, 5) - (2 + 2 * std::cos(4 * std::numbers::pi / 5))) < 1e-12);
    CHECK(std::abs(kloosterman(0, 7, 7) - cplx(6.0)) < 1e-12);
    CHECK(std::abs(ramanujan(7, 7) - cplx(6.0)) < 1e-12);
    for (i64 n = 0; n < 12; ++n) CHECK(std::abs(kloosterman(0, n, 12) - ramanujan(12, n)) < 1e-12);
    const auto p = DirichletCharacter::principal(9);
    for (i64 m = 0; m < 9; ++m) CHECK(std::abs(hybridKloosterman(p, m, 2, 9) - kloosterman(m, 2, 9)) < 1e-12);
}

TEST_CASE("twisted multiplicativity") {
    const auto r1 = verifyMultK(DirichletCharacter::principal(3), DirichletCharacter::principal(5), 1, 1);
    CHECK(r1.residual < 1e-9);
    const auto r2 = verifyMultK(withOrder(7, 3, true), DirichletCharacter(), 2, 3);
    CHECK(r2.residual == 0.0);
    const auto r3 = verifyMultK(withOrder(5, 2, true), withOrder(7, 3, true), 2, 3);
    CHECK(r3.residual < 1e-9);
    // the product of the two sums alone misses the phi1(d) phi2(c) factor
    CHECK(r3.printedResidual > 1e-3);
    CHECK_THROWS_AS(verifyMultK(DirichletCharacter::principal(6), DirichletCharacter::principal(4), 1, 1), UsageError);
}

TEST_CASE("character ids round-trip") {
    for (i64 m : {1, 8, 21, 45})
        for (const auto& c : characterTable(m)) CHECK(characterFromId(c.id()) == c);
    CHECK_THROWS_AS(characterFromId("12"), UsageError);
    CHECK_THROWS_AS(characterFromId("5:1,x"), UsageError);
    CHECK_THROWS_AS(characterFromId("5:1,2"), UsageError);
}

TEST_CASE("quadruple validation") {
    auto Q = makeQuadruple(101, {1, 5, 7, 11}, 0.0, {1, 1});
    CHECK_NOTHROW(Q.validate());
    Q.q = 100;
    CHECK_THROWS_AS(Q.validate(), UsageError);
    CHECK_THROWS_AS(makeQuadruple(101, {1, 5, 5, 11}, 0.0, {1, 1}).validate(), UsageError);
}
