#pragma once
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "fourl/chargroup.hpp"

namespace fourl {

using CharArray = std::array<DirichletCharacter, 4>;

// Which of the given characters plays each role 1..4.
CharArray permuteChars(const CharArray& chi, std::array<int, 4> perm);
// The c- rule: chi1 <-> chi4, chi2 <-> chi3.
CharArray minusSwap(const CharArray& chi);

// chi_1(p), .., chi_4(p) as plain values (0 when p divides the modulus).
struct LocalValues {
    std::array<cplx, 4> c{};
    cplx operator[](int i) const { return c[i]; }
};
LocalValues localValues(const CharArray& chi, i64 p);
// chi1 -> conj chi3, chi2 -> conj chi4 and back: the symmetry behind G..K.
LocalValues mirror(const LocalValues& v);
CharArray mirrorChars(const CharArray& chi);

// p-adic valuations of D1, D3, A1, A3, B1, B3 at one prime.
struct Valuations {
    int d1 = 0, d3 = 0, a1 = 0, a3 = 0, b1 = 0, b3 = 0;
};

// l1 = A1 B1 with A1 | D1^oo and (B1, D1) = 1; l2 = A3 B3 likewise with D3.
struct LocalFactorContext {
    CharArray chi;
    std::array<i64, 4> D{};
    i64 l1 = 1, l2 = 1;
    i64 A1 = 1, B1 = 1, A3 = 1, B3 = 1;

    // Throws UsageError when gcd(l1, l2) != 1, an argument is not positive, or the
    // moduli are not pairwise coprime and squarefree.
    static LocalFactorContext make(const CharArray& chi, i64 l1, i64 l2);
    Valuations at(i64 p) const;
    // Primes dividing D1 D3 B1 B3, increasing.
    std::vector<i64> primes() const;
};

struct EulerProductValue {
    cplx value;
    i64 primeCutoff = 0;
    double tailBound = 0.0;
};

// (chi1 * chi2)(p^e) and (conj chi3 * conj chi4)(p^e) from local values.
cplx convolutionAB(const LocalValues& v, int e);
cplx convolutionCD(const LocalValues& v, int e);

// F(l1, l2; s): finite product over p | l1 l2 of the shifted diagonal series
// divided by the unshifted one. Needs Re s > 0.
cplx factorF(const CharArray& chi, i64 l1, i64 l2, cplx s);
// Den_p(s) * prod (1 - chi_i conj chi_j(p) p^{-s}), i in {1,2}, j in {3,4}, from the series.
cplx localH(const LocalValues& v, i64 p, cplx s);

enum class HMode { Completed, Plain };
// H(s). Completed: series factors for p <= primeCutoff, the rest through
// 1/L(2s, chi1 chi2 conj(chi3 chi4)). Plain: truncated product with a tail bound.
EulerProductValue factorH(const CharArray& chi, cplx s, HMode mode = HMode::Completed, i64 primeCutoff = 100);

// A_{chi1..chi4}(l1, l2) at s = 1, the two-part product of the moment theorem.
EulerProductValue productA(const CharArray& chi, i64 l1, i64 l2, i64 primeCutoff = 1000);

// sum_{n <= N} (chi1 * chi2)(l2 n) (conj chi3 * conj chi4)(l1 n) n^{-s} against
// F(l1, l2; s) H(s) L(s, chi1 conj chi3) L(s, chi1 conj chi4) L(s, chi2 conj chi3) L(s, chi2 conj chi4).
struct DiagonalCheck {
    cplx series;
    cplx product;
    double residual = 0.0;
    i64 N = 0;
};
DiagonalCheck diagonalFactorization(const CharArray& chi, i64 l1, i64 l2, cplx s, i64 N);

// ---- local factors of c+ ----
// The W' sum factor at p with arbitrary valuations (geometric tail summed exactly).
cplx rawLocalFactor(i64 p, const LocalValues& v, const Valuations& val, cplx s);
// Raw factor times (1 - x)/(1 - psi/p^2) divided by its character and phi normalization,
// x = chi2 conj chi4(p) p^{-1-s}, psi = conj(chi1 chi4) chi2 chi3.
cplx normalizedLocalFactor(i64 p, const LocalValues& v, const Valuations& val, cplx s);

// Named factors of the W' sum.
cplx factorAp(i64 p, const LocalValues& v, cplx s);          // p not dividing D1 D3 B1 B3
cplx factorBp(i64 p, const LocalValues& v, int a1, cplx s);  // p | A1
cplx factorCp(i64 p, const LocalValues& v, int b3, cplx s);  // p | (D1, B3)
cplx factorDp(i64 p, const LocalValues& v, cplx s);          // p | D1, p not dividing A1 B3
cplx factorEp(i64 p, const LocalValues& v, int b3, cplx s);  // p | B3, p not dividing D1 D2 D4
cplx factorFp(i64 p, const LocalValues& v, int b3, cplx s);  // p | (B3, D4)
cplx factorGp(i64 p, const LocalValues& v, int a3, cplx s);  // p | A3
cplx factorHp(i64 p, const LocalValues& v, int b1, cplx s);  // p | (D3, B1)
cplx factorIp(i64 p, const LocalValues& v, cplx s);          // p | D3, p not dividing A3 B1
cplx factorJp(i64 p, const LocalValues& v, int b1, cplx s);  // p | B1, p not dividing D3 D2 D4
cplx factorKp(i64 p, const LocalValues& v, int b1, cplx s);  // p | (B1, D2)

// The reduced factors entering c+, as finite sums (no pole at chi2 conj chi3(p) p^{-s} = 1).
cplx cPlusC(i64 p, const LocalValues& v, int b3, cplx s);
cplx cPlusE(i64 p, const LocalValues& v, int b3, cplx s);
cplx cPlusF(i64 p, const LocalValues& v, int b3, cplx s);
cplx cPlusH(i64 p, const LocalValues& v, int b1, cplx s);
cplx cPlusJ(i64 p, const LocalValues& v, int b1, cplx s);
cplx cPlusK(i64 p, const LocalValues& v, int b1, cplx s);

// The same displays taken literally. They disagree with the W' series and are kept for comparison;
// they throw MathError when 1 - chi2 conj chi3(p) p^{-s} vanishes.
cplx cPlusCPrinted(i64 p, const LocalValues& v, int b3, cplx s);
cplx cPlusEPrinted(i64 p, const LocalValues& v, int b3, cplx s);
cplx cPlusFPrinted(i64 p, const LocalValues& v, int b3, cplx s);
cplx factorFpPrinted(i64 p, const LocalValues& v, int b3, cplx s);

// psi = conj(chi1 chi4) chi2 chi3 as a character mod lcm(D).
DirichletCharacter cPlusPsi(const CharArray& chi);

// c+(s; l1, l2, D1, D3) from the named factors and the character prefactor.
cplx cplus(const CharArray& chi, i64 l1, i64 l2, cplx s);
// The same product assembled from rawLocalFactor; an independent path.
cplx cplusSeries(const CharArray& chi, i64 l1, i64 l2, cplx s);
// c-: c+ after minusSwap.
cplx cminus(const CharArray& chi, i64 l1, i64 l2, cplx s);

struct IdentityResult {
    cplx lhs;
    cplx rhs;
    double residual = 0.0;
};
// c+(2s; l1/g, l2/g)(l1 l2/g^2)^s against c-(-2s; D1D2 l1/G, D3D4 l2/G)(l1 l2/G^2)^{-s}.
IdentityResult verifyIdentity(const CharArray& chi, i64 l1, i64 l2, cplx s);
// c+(0; l1/g, l2/g) against A_{chi3,chi2,chi1,chi4}(D1 l1/g', D3 l2/g').
IdentityResult verifySecondIdentity(const CharArray& chi, i64 l1, i64 l2);

// 1 - (a + b)(conj c + conj d)/p - a b conj(c d)/p^2.
cplx upFactor(i64 p, cplx a, cplx b, cplx c, cplx d);

struct CyclotomicScanResult {
    double minModulus = 0.0;
    i64 m = 0;
    std::array<Angle, 4> argmin{};
    std::uint64_t tuples = 0;
};
// min |1 - (a+b)(c+d)/m - abcd/m^2| over roots of unity of order <= maxOrder and m in ms.
CyclotomicScanResult cyclotomicScan(int maxOrder, const std::vector<i64>& ms, int workers = 0);

struct UpScanResult {
    double minModulus = 0.0;
    i64 prime = 0;
    int valueCount = 0;  // distinct chi(p) values seen at the minimizing prime
};
// min |U_p| over primes p < maxPrime and chi(p) drawn from primitive characters
// of conductor <= maxConductor. Exhaustive for p <= 3, the 1 - 4/p - 1/p^2 floor above.
// includeZero admits chi(p) = 0 (p dividing the conductor); U_2 can then vanish,
// e.g. chi1(2) = chi2(2) = chi3(2) = 1, chi4(2) = 0.
UpScanResult upFactorScan(i64 maxConductor, i64 maxPrime, bool includeZero, int workers = 0);

// Random primitive characters with pairwise coprime moduli, for fuzzing.
struct IdentityConfig {
    std::array<i64, 4> D{};
    std::array<std::string, 4> ids;
    i64 l1 = 1, l2 = 1;
    cplx s;
    CharArray chi;
};
IdentityConfig randomIdentityConfig(std::uint64_t seed);
// The five s-values used by the fuzz harness.
const std::array<cplx, 5>& identitySGrid();
// Pairwise coprime squarefree moduli with no principal chi_i conj chi_j, i in {1, 2}, j in {3, 4};
// l1, l2 coprime in 1..12.
IdentityConfig randomDiagonalConfig(std::uint64_t seed);

struct FuzzRecord {
    IdentityConfig config;
    std::string identity;  // "identity" or "secondidentity"
    cplx lhs;
    cplx rhs;
    double residual = 0.0;
};
// trials configurations per identity; record i depends only on (seed, i).
std::vector<FuzzRecord> fuzzIdentities(int trials, std::uint64_t seed, int workers = 0);

}  // namespace fourl
