#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fourl/errors.hpp"
#include "fourl/eulerprod.hpp"
#include "fourl/lfun.hpp"

using namespace fourl;

namespace {

const double kZeta2 = std::numbers::pi * std::numbers::pi / 6;
const double kZeta4 = kZeta2 * kZeta2 * 0.4;  // pi^4/90

DirichletCharacter firstEvenPrimitive(i64 m) { return evenPrimitiveCharacters(m).at(0); }

// sum_{n <= N} f(n) g(n) n^{-2} for divisor-type f, g given as tables
double series(const std::vector<double>& a, const std::vector<double>& b, std::size_t N) {
    double s = 0.0;
    for (std::size_t n = N; n >= 1; --n) s += a[n] * b[n] / (double(n) * double(n));
    return s;
}

}  // namespace

TEST_CASE("F is 1 without twists") {
    const auto c = randomIdentityConfig(3);
    CHECK(std::abs(factorF(c.chi, 1, 1, 2.0) - cplx(1.0)) < 1e-15);
}

TEST_CASE("F(2, 1; 2) for trivial characters") {
    const CharArray triv{};
    const cplx F = factorF(triv, 2, 1, 2.0);
    CHECK(std::abs(F - cplx(1.6)) < 1e-12);
    // quotient of truncated diagonal series; the truncation error is O(log^3 N / N)
    const std::size_t N = 100000;
    std::vector<double> d(2 * N + 1, 0.0);
    for (std::size_t a = 1; a <= 2 * N; ++a)
        for (std::size_t b = a; b <= 2 * N; b += a) d[b] += 1;
    std::vector<double> d2(N + 1);
    for (std::size_t n = 1; n <= N; ++n) d2[n] = d[2 * n];
    const double q = series(d, d2, N) / series(d, d, N);
    CHECK(std::abs(q - 1.6) < 5e-3);
}

TEST_CASE("H(s)") {
    const CharArray triv{};
    // sum d(n)^2 n^{-s} = zeta(s)^4 / zeta(2s)
    const cplx H2 = factorH(triv, 2.0).value;
    CHECK(std::abs(H2 * std::pow(kZeta2, 4) - std::pow(kZeta2, 4) / kZeta4) < 1e-10);
    CHECK(std::abs(H2 * std::pow(kZeta2, 4) - 6.76452021069462) < 1e-12);

    // |H(2) - 1| below 6 sum_p p^{-2}, one term per cross product chi_i conj chi_j
    double primeZeta = 0.0;
    for (i64 p : primesUpTo(1000000)) primeZeta += 1.0 / (double(p) * double(p));
    for (int i = 0; i < 10; ++i) {
        const auto c = randomIdentityConfig(100 + i);
        CHECK(std::abs(factorH(c.chi, 2.0).value - 1.0) <= 6 * primeZeta);
    }

    // D2 = 5, D3 = 7: H(2) from the diagonal series divided by the four L(2). chi1 conj chi4 is
    // principal, so the series carries a zeta(2) factor and converges like log N / N.
    CharArray chi{};
    chi[1] = firstEvenPrimitive(5);
    chi[2] = firstEvenPrimitive(7);
    const auto chk = diagonalFactorization(chi, 1, 1, 2.0, 1000000);
    const cplx H = factorH(chi, 2.0).value;
    CHECK(std::abs(chk.series / (chk.product / H) - H) < 1e-6);

    // Completed and plain modes agree within the plain tail bound
    const auto c = randomIdentityConfig(7);
    const auto plain = factorH(c.chi, 2.0, HMode::Plain, 20000);
    CHECK(std::abs(plain.value - factorH(c.chi, 2.0).value) <= plain.tailBound + 1e-12);
}

TEST_CASE("diagonal factorization on non-confluent configurations") {
    for (int i = 0; i < 5; ++i) {
        const auto c = randomDiagonalConfig(i);
        const auto r = diagonalFactorization(c.chi, c.l1, c.l2, 2.0, 100000);
        CHECK(r.residual < 1e-6);
    }
    CHECK_THROWS_AS(diagonalFactorization(CharArray{}, 2, 4, 2.0, 10), UsageError);
}

TEST_CASE("A(l1, l2) against F(.; 1) H(1)") {
    for (int i = 0; i < 20; ++i) {
        const auto c = randomDiagonalConfig(500 + i);
        const auto A = productA(c.chi, c.l1, c.l2);
        const cplx FH = factorF(c.chi, c.l1, c.l2, 1.0) * factorH(c.chi, 1.0).value;
        CHECK(std::abs(A.value - FH) < 1e-10 + A.tailBound);
        // (chi1 * chi2) = (chi2 * chi1)
        const auto swapped = productA(permuteChars(c.chi, {1, 0, 3, 2}), c.l1, c.l2);
        CHECK(std::abs(swapped.value - A.value) < 1e-12);
    }
    const CharArray triv{};
    CHECK(std::abs(factorF(triv, 1, 1, 1.0) - cplx(1.0)) < 1e-15);
}

TEST_CASE("identities") {
    SUBCASE("fuzz") {
        for (int i = 0; i < 100; ++i) {
            const auto c = randomIdentityConfig(9000 + i);
            for (const auto& s : identitySGrid()) CHECK(verifyIdentity(c.chi, c.l1, c.l2, s).residual < 1e-10);
            CHECK(verifySecondIdentity(c.chi, c.l1, c.l2).residual < 1e-9);
        }
    }
    SUBCASE("all moduli 1") {
        const CharArray triv{};
        for (const auto& s : identitySGrid()) {
            CHECK(verifyIdentity(triv, 6, 35, s).residual < 1e-12);
            CHECK(verifyIdentity(triv, 1, 1, s).residual < 1e-14);
        }
    }
    SUBCASE("second identity, small cases") {
        auto c = randomIdentityConfig(1);
        c.chi[0] = DirichletCharacter();
        c.chi[2] = DirichletCharacter();
        CHECK(verifySecondIdentity(c.chi, 1, 1).residual < 1e-12);

        CharArray chi{};
        chi[0] = firstEvenPrimitive(5);
        chi[2] = firstEvenPrimitive(7);
        chi[1] = firstEvenPrimitive(13);
        CHECK(verifySecondIdentity(chi, 2, 3).residual < 1e-10);
    }
    SUBCASE("the c- swap is an involution") {
        const auto c = randomIdentityConfig(42);
        const auto back = minusSwap(minusSwap(c.chi));
        for (int r = 0; r < 4; ++r) CHECK(back[r] == c.chi[r]);
        CHECK(std::abs(cplus(back, c.l1, c.l2, 0.3) - cplus(c.chi, c.l1, c.l2, 0.3)) < 1e-15);
    }
}

TEST_CASE("c+ closed form against its Dirichlet series") {
    for (int i = 0; i < 10; ++i) {
        const auto c = randomIdentityConfig(300 + i);
        const cplx s(1.5, 0.2);
        const i64 g = gcd(c.l1, c.l2);
        CHECK(std::abs(cplus(c.chi, c.l1 / g, c.l2 / g, s) - cplusSeries(c.chi, c.l1 / g, c.l2 / g, s)) < 1e-9);
    }
}

TEST_CASE("cyclotomic expression") {
    CHECK(std::abs(std::abs(upFactor(2, 1.0, 1.0, 1.0, 1.0)) - 1.25) < 1e-15);
    const auto r5 = cyclotomicScan(12, {5});
    CHECK(r5.minModulus >= 4.0 / 25.0 - 1e-12);
    const auto r = cyclotomicScan(8, {2, 3, 4});
    CHECK(r.minModulus > 0);
    // with chi4(2) = 0 allowed the factor at p = 2 vanishes
    const auto z = upFactorScan(5, 3, true);
    CHECK(z.minModulus < 1e-12);
    CHECK(z.prime == 2);
}
