#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "fourl/errors.hpp"
#include "fourl/moments.hpp"

using namespace fourl;

namespace {

BruteForceOptions hurwitz() {
    BruteForceOptions o;
    o.method = MomentMethod::Hurwitz;
    return o;
}

// Random admissible quadruple with D drawn from small square-free moduli and no confluent pair.
Quadruple randomQuadruple(std::mt19937_64& rng) {
    static const i64 kPool[] = {1, 3, 5, 7, 11, 13};
    static const i64 kPrimes[] = {17, 19, 23, 29, 31, 37};
    for (;;) {
        std::array<i64, 4> D{};
        for (auto& d : D) d = kPool[rng() % 6];
        bool ok = true;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (gcd(D[i], D[j]) != 1) ok = false;
        // the swap terms pair every two roles, so at most one modulus may be 1
        if (std::count(D.begin(), D.end(), 1) > 1) ok = false;
        // the quadratic character mod 3 and mod 7, 11 are odd: keep moduli with even primitive characters
        for (auto d : D)
            if (d > 1 && evenPrimitiveCharacters(d).empty()) ok = false;
        if (!ok) continue;
        std::array<int, 4> choice{};
        for (int j = 0; j < 4; ++j) choice[j] = D[j] == 1 ? 0 : int(rng() % evenPrimitiveCharacters(D[j]).size());
        const i64 q = kPrimes[rng() % 6];
        auto Q = makeQuadruple(q, D, 0.3 * double(rng() % 5), {1 + i64(rng() % 3), 1}, choice);
        Q.validate();
        return Q;
    }
}

}  // namespace

TEST_CASE("counting even primitive characters") {
    CHECK(enumerateEvenPrimitive(7).size() == 2);
    CHECK(phiPlus(7) == 2);
    const auto five = enumerateEvenPrimitive(5);
    REQUIRE(five.size() == 1);
    CHECK(five[0].order() == 2);
    CHECK(enumerateEvenPrimitive(13).size() == 5);
    for (i64 q : {5, 7, 11, 13, 29}) CHECK(checkOrthogonality(q).exact);
}

TEST_CASE("moment symmetries") {
    SUBCASE("I(l, l) = I(1, 1)") {
        const auto a = bruteForceMoment(makeQuadruple(13, {1, 5, 7, 1}, 0.0, {1, 1}), hurwitz()).value;
        const auto b = bruteForceMoment(makeQuadruple(13, {1, 5, 7, 1}, 0.0, {4, 4}), hurwitz()).value;
        CHECK(std::abs(a - b) < 1e-12);
    }
    SUBCASE("conjugation") {
        const auto Q = makeQuadruple(17, {1, 5, 7, 1}, 0.4, {2, 3});
        Quadruple R = Q;
        R.D = {Q.D[2], Q.D[3], Q.D[0], Q.D[1]};
        R.chi = {Q.chi[2], Q.chi[3], Q.chi[0], Q.chi[1]};
        R.ell = {Q.ell[1], Q.ell[0]};
        const auto a = bruteForceMoment(Q, hurwitz()).value;
        const auto b = bruteForceMoment(R, hurwitz()).value;
        CHECK(std::abs(a - std::conj(b)) < 1e-12);
    }
    SUBCASE("AFE and Hurwitz paths") {
        const auto Q = makeQuadruple(29, {1, 5, 7, 1}, 0.0, {2, 1});
        BruteForceOptions afe;
        afe.afeTolerance = 1e-12;
        CHECK(std::abs(bruteForceMoment(Q, afe).value - bruteForceMoment(Q, hurwitz()).value) < 1e-8);
    }
    SUBCASE("orthogonality split") {
        const auto s = orthogonalitySplit(makeQuadruple(13, {1, 5, 7, 1}, 0.0, {2, 3}));
        CHECK(std::abs(s.characterAverage - s.congruenceForm) < 1e-9);
    }
}

TEST_CASE("root number") {
    CHECK(std::abs(rootNumber(makeQuadruple(101, {1, 1, 1, 1}, 0.0, {1, 1})) - cplx(1.0)) < 1e-15);
    const auto Q = makeQuadruple(101, {1, 5, 1, 1}, 0.0, {1, 1});
    CHECK(std::abs(rootNumber(Q) - Q.chi[1](101)) < 1e-12);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) CHECK(std::abs(std::abs(rootNumber(randomQuadruple(rng))) - 1.0) < 1e-12);
}

TEST_CASE("main term M") {
    const auto Q = makeQuadruple(101, {1, 5, 7, 11}, 0.0, {1, 1});
    const cplx M = mainTermM(Q.chi, 1, 1, 0.0);
    cplx L = 1.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 4; ++j) L *= lOneCross(Q.chi[i], Q.chi[j]);
    CHECK(std::abs(M - productA(Q.chi, 1, 1).value * L) < 1e-9);
    CHECK(std::abs(M - factorF(Q.chi, 1, 1, 1.0) * factorH(Q.chi, 1.0).value * L) < 1e-9);
    CHECK_THROWS_AS(mainTermM(CharArray{}, 1, 1, 0.0), ConfluentCharacters);
}

TEST_CASE("six-term prediction") {
    const auto Q = makeQuadruple(101, {1, 5, 7, 11}, 0.0, {1, 1});
    const auto st = sixTermPrediction(Q);
    CHECK(SixTerms::labels()[0] == "diagonal");
    cplx sum = 0.0;
    for (const auto& t : st.terms) sum += t;
    CHECK(std::abs(sum - st.sum) < 1e-14);
    CHECK(std::abs(st.sum - cplx(0.7740439253, 0.0821647687)) < 1e-9);

    SUBCASE("swap symmetry") {
        const auto Q2 = makeQuadruple(101, {5, 1, 7, 11}, 0.0, {1, 1});
        const auto Q3 = makeQuadruple(101, {1, 5, 11, 7}, 0.0, {1, 1});
        CHECK(std::abs(sixTermPrediction(Q2).sum - st.sum) < 1e-10);
        CHECK(std::abs(sixTermPrediction(Q3).sum - st.sum) < 1e-10);
        CHECK(std::abs(bruteForceMoment(Q2, hurwitz()).value - bruteForceMoment(Q, hurwitz()).value) < 1e-10);
    }
    SUBCASE("t conjugation") {
        auto Qt = makeQuadruple(101, {1, 5, 7, 11}, 0.7, {2, 3});
        auto Qc = Qt;
        Qc.t = -0.7;
        for (auto& c : Qc.chi) c = c.conj();
        CHECK(std::abs(sixTermPrediction(Qc).sum - std::conj(sixTermPrediction(Qt).sum)) < 1e-10);
    }
    SUBCASE("confluent configurations name the term") {
        try {
            sixTermPrediction(makeQuadruple(101, {1, 1, 1, 1}, 0.0, {1, 1}));
            FAIL("expected ConfluentCharacters");
        } catch (const ConfluentCharacters& e) {
            CHECK(std::string(e.what()).find("diagonal") != std::string::npos);
        }
    }
}

TEST_CASE("untwisted formula") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        auto Q = randomQuadruple(rng);
        Q.ell = {1, 1};
        CHECK(std::abs(untwistedPrediction(Q) - sixTermPrediction(Q).sum) < 1e-9);
    }
    const auto Q = makeQuadruple(101, {1, 5, 7, 11}, 0.0, {1, 1});
    const auto& c = Q.chi;
    CHECK(std::abs(rFactor(c[0], c[1], c[2], c[3]) - rFactor(c[1], c[0], c[3], c[2])) < 1e-12);
    CHECK(std::abs(untwistedCoefficients(c, 101 % Q.Dprod())[0] - cplx(1.0)) < 1e-15);
}

TEST_CASE("sixfold matrix") {
    SUBCASE("trivial characters") {
        const auto m = sixfoldMatrix(CharArray{}, 1);
        for (const auto& row : m)
            for (const auto& e : row) CHECK(std::abs(e - cplx(1.0)) < 1e-14);
        CHECK(std::abs(determinant6(m)) < 1e-12);
    }
    SUBCASE("D = (1,5,7,11)") {
        const auto recs = detScan({{1, 5, 7, 11}});
        REQUIRE(!recs.empty());
        for (const auto& r : recs) {
            CHECK(!r.vacuous);
            CHECK(r.detModulus > 1e-8);
            CHECK(r.derivedDetModulus > 1e-8);
        }
        const auto Q = makeQuadruple(101, {1, 5, 7, 11}, 0.0, {1, 1});
        const auto m = sixfoldMatrix(Q.chi, 101 % Q.Dprod());
        for (int i = 0; i < 6; ++i) CHECK(std::abs(m[i][i] - cplx(1.0)) < 1e-14);
        CHECK(std::abs(determinantModulusQuad(Q.chi, 101 % Q.Dprod(), MatrixForm::Literal) -
                       std::abs(determinant6(m))) < 1e-12);
    }
    SUBCASE("vacuous tuples are reported") {
        const auto recs = detScan({{1, 3, 5, 7}});
        REQUIRE(recs.size() == 1);
        CHECK(recs[0].vacuous);
    }
}
