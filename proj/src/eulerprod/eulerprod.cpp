#include "fourl/eulerprod.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <set>

#include "fourl/errors.hpp"
#include "fourl/lfun.hpp"
#include "fourl/parallel.hpp"

namespace fourl {

namespace {

cplx pw(cplx z, int n) {
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r *= z;
    return r;
}

// p^{-s}
cplx pms(i64 p, cplx s) { return std::exp(-s * std::log(static_cast<double>(p))); }

double phiPow(i64 p, int e) { return e == 0 ? 1.0 : (p - 1) * std::pow(static_cast<double>(p), e - 1); }

cplx cj(cplx z) { return std::conj(z); }

// 1 - chi2 conj chi3(p) p^{-s}, refusing the measure-zero case where it vanishes.
cplx oneMinusY(const LocalValues& v, i64 p, cplx s) {
    const cplx d = 1.0 - v[1] * cj(v[2]) * pms(p, s);
    if (std::abs(d) < 1e-13) throw MathError("c+ local factor: 1 - chi2 conj chi3(p) p^{-s} vanishes");
    return d;
}

cplx xOf(const LocalValues& v, i64 p, cplx s) { return v[1] * cj(v[3]) * pms(p, 1.0 + s); }

cplx psiOf(const LocalValues& v) { return cj(v[0]) * cj(v[3]) * v[1] * v[2]; }

cplx evalN(const DirichletCharacter& chi, i64 n) { return chi(n); }

// sum_{j >= 0} term(j) where |term(j)| <= (j + L1 + 1)(j + L2 + 1) r^j.
template <class Term>
cplx sumPolyGeometric(Term term, int L1, int L2, double r) {
    if (!(r < 1.0)) throw MathError("Euler factor series diverges (Re s <= 0)");
    cplx sum = 0.0;
    for (int j = 0; j < 200000; ++j) {
        sum += term(j);
        const double a = (j + L1 + 1.0) * (j + L2 + 1.0);
        const double b = (j + L1 + 2.0) * (j + L2 + 2.0);
        const double rho = b / a * r;
        const double tb = a * std::pow(r, j);
        if (rho < 1.0 && tb * rho / (1.0 - rho) < 1e-17 * std::max(1.0, std::abs(sum))) return sum;
    }
    throw MathError("Euler factor series did not converge");
}

void requirePairwiseCoprime(const CharArray& chi) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (gcd(chi[i].modulus(), chi[j].modulus()) != 1)
                throw UsageError("character moduli must be pairwise coprime");
}

}  // namespace

CharArray permuteChars(const CharArray& chi, std::array<int, 4> perm) {
    CharArray out;
    for (int r = 0; r < 4; ++r) out[r] = chi[perm[r]];
    return out;
}

CharArray minusSwap(const CharArray& chi) { return permuteChars(chi, {3, 2, 1, 0}); }

LocalValues localValues(const CharArray& chi, i64 p) {
    LocalValues v;
    for (int r = 0; r < 4; ++r) v.c[r] = chi[r](p);
    return v;
}

LocalValues mirror(const LocalValues& v) {
    LocalValues m;
    m.c = {cj(v[2]), cj(v[3]), cj(v[0]), cj(v[1])};
    return m;
}

CharArray mirrorChars(const CharArray& chi) { return {chi[2].conj(), chi[3].conj(), chi[0].conj(), chi[1].conj()}; }

LocalFactorContext LocalFactorContext::make(const CharArray& chi, i64 l1, i64 l2) {
    if (l1 < 1 || l2 < 1) throw UsageError("twists must be positive");
    if (gcd(l1, l2) != 1) throw UsageError("reduced twists must be coprime");
    requirePairwiseCoprime(chi);
    for (const auto& x : chi)
        if (!isSquarefree(x.modulus())) throw UsageError("c+ local factors need squarefree moduli");
    LocalFactorContext c;
    c.chi = chi;
    for (int r = 0; r < 4; ++r) c.D[r] = chi[r].modulus();
    c.l1 = l1;
    c.l2 = l2;
    c.B1 = l1;
    for (i64 p : primeDivisors(c.D[0]))
        while (c.B1 % p == 0) {
            c.B1 /= p;
            c.A1 *= p;
        }
    c.B3 = l2;
    for (i64 p : primeDivisors(c.D[2]))
        while (c.B3 % p == 0) {
            c.B3 /= p;
            c.A3 *= p;
        }
    return c;
}

Valuations LocalFactorContext::at(i64 p) const {
    Valuations v;
    v.d1 = valuation(D[0], p);
    v.d3 = valuation(D[2], p);
    v.a1 = valuation(A1, p);
    v.a3 = valuation(A3, p);
    v.b1 = valuation(B1, p);
    v.b3 = valuation(B3, p);
    return v;
}

std::vector<i64> LocalFactorContext::primes() const {
    std::set<i64> ps;
    for (i64 n : {D[0], D[2], B1, B3})
        for (i64 p : primeDivisors(n)) ps.insert(p);
    return {ps.begin(), ps.end()};
}

cplx convolutionAB(const LocalValues& v, int e) {
    cplx s = 0.0;
    for (int i = 0; i <= e; ++i) s += pw(v[0], i) * pw(v[1], e - i);
    return s;
}

cplx convolutionCD(const LocalValues& v, int e) {
    cplx s = 0.0;
    for (int i = 0; i <= e; ++i) s += pw(cj(v[2]), i) * pw(cj(v[3]), e - i);
    return s;
}

namespace {

cplx diagonalSeries(const LocalValues& v, i64 p, cplx s, int lam1, int lam2) {
    const cplx z = pms(p, s);
    const double r = std::abs(z);
    return sumPolyGeometric(
        [&](int j) { return convolutionAB(v, j + lam2) * convolutionCD(v, j + lam1) * pw(z, j); }, lam1, lam2, r);
}

}  // namespace

cplx factorF(const CharArray& chi, i64 l1, i64 l2, cplx s) {
    if (!(s.real() > 0.0)) throw MathError("factorF: needs Re s > 0");
    if (l1 < 1 || l2 < 1 || gcd(l1, l2) != 1) throw UsageError("factorF: arguments must be coprime positive integers");
    std::set<i64> ps;
    for (i64 p : primeDivisors(l1)) ps.insert(p);
    for (i64 p : primeDivisors(l2)) ps.insert(p);
    cplx out = 1.0;
    for (i64 p : ps) {
        const LocalValues v = localValues(chi, p);
        const int lam1 = valuation(l1, p), lam2 = valuation(l2, p);
        out *= diagonalSeries(v, p, s, lam1, lam2) / diagonalSeries(v, p, s, 0, 0);
    }
    return out;
}

cplx localH(const LocalValues& v, i64 p, cplx s) {
    const cplx z = pms(p, s);
    cplx h = diagonalSeries(v, p, s, 0, 0);
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 4; ++j) h *= 1.0 - v[i] * cj(v[j]) * z;
    return h;
}

namespace {

DirichletCharacter hPsi(const CharArray& chi) {
    return multiply(multiply(chi[0], chi[1]), multiply(chi[2].conj(), chi[3].conj()));
}

// prod_{p <= P} localH(p) / (L(2s, psi) prod_{p <= P} (1 - psi(p) p^{-2s}))
cplx completedH(const CharArray& chi, cplx s, i64 P) {
    const DirichletCharacter psi = hPsi(chi);
    cplx logv = -std::log(lvalue(psi, 2.0 * s).value);
    for (i64 p : primesUpTo(P)) {
        const LocalValues v = localValues(chi, p);
        logv += std::log(localH(v, p, s)) - std::log(1.0 - psi(p) * pms(p, 2.0 * s));
    }
    return std::exp(logv);
}

}  // namespace

EulerProductValue factorH(const CharArray& chi, cplx s, HMode mode, i64 primeCutoff) {
    const double sigma = s.real();
    if (!(sigma > 0.5)) throw MathError("factorH: needs Re s > 1/2");
    if (primeCutoff < 2) throw UsageError("factorH: prime cutoff must be at least 2");
    EulerProductValue out;
    out.primeCutoff = primeCutoff;
    if (mode == HMode::Completed) {
        out.value = completedH(chi, s, primeCutoff);
        out.tailBound = 1e-13 * std::max(1.0, std::abs(out.value));
        return out;
    }
    cplx logv = 0.0;
    for (i64 p : primesUpTo(primeCutoff)) logv += std::log(localH(localValues(chi, p), p, s));
    out.value = std::exp(logv);
    // |H_p - 1| <= 16 p^{-2 sigma}, |log(1 + z)| <= 2|z| for |z| <= 1/2,
    // sum_{n > P} n^{-2 sigma} <= P^{1 - 2 sigma}/(2 sigma - 1)
    const double P = static_cast<double>(primeCutoff);
    const double tail = 32.0 * std::pow(P, 1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0);
    out.tailBound = std::abs(out.value) * std::expm1(tail);
    return out;
}

EulerProductValue productA(const CharArray& chi, i64 l1, i64 l2, i64 primeCutoff) {
    if (l1 < 1 || l2 < 1 || gcd(l1, l2) != 1) throw UsageError("productA: arguments must be coprime positive integers");
    EulerProductValue out;
    out.primeCutoff = primeCutoff;
    out.value = factorF(chi, l1, l2, 1.0) * completedH(chi, 1.0, primeCutoff);
    out.tailBound = 1e-13 * std::max(1.0, std::abs(out.value));
    return out;
}

cplx rawLocalFactor(i64 p, const LocalValues& v, const Valuations& val, cplx s) {
    const cplx c1 = v[0], c2 = v[1], c3b = cj(v[2]), c4b = cj(v[3]);
    const double pd = static_cast<double>(p);
    const cplx bracket = 1.0 + 1.0 / (pd - 1.0) - cj(v[0]) * v[2] / pms(p, s) / (pd - 1.0);
    const cplx step = pms(p, 2.0 + s);
    auto f = [&](int j) {
        const int m1 = std::min(val.d3 + val.a3 + j, val.b1);
        const int m3 = std::min(val.b3, val.d1 + val.a1 + j);
        cplx t = phiPow(p, val.d1 + val.d3 + val.a1 + val.a3 + j) * pw(c1, m1) * pw(c3b, m3) *
                 pw(c2, val.d1 + val.d3 + val.a3 + j - m1) * pw(c4b, val.d1 + val.d3 + val.a1 + j - m3) *
                 std::pow(pd, m1 + m3) * pw(step, j);
        if (j >= 1 && val.d1 == 0 && val.d3 == 0) t *= bracket;
        return t;
    };
    // beyond j0 each step multiplies the term by chi2 conj chi4(p) p^{-1-s}
    const int j0 = std::max(val.b1, val.b3) + 1;
    cplx tot = 0.0;
    for (int j = 0; j <= j0; ++j) tot += f(j);
    const cplx r = c2 * c4b * pms(p, 1.0 + s);
    if (std::abs(r) >= 1.0) throw MathError("raw local factor: geometric tail diverges (Re s <= -1)");
    return tot + f(j0 + 1) / (1.0 - r);
}

cplx normalizedLocalFactor(i64 p, const LocalValues& v, const Valuations& val, cplx s) {
    const cplx raw = rawLocalFactor(p, v, val, s);
    const cplx x = xOf(v, p, s);
    const cplx psi = psiOf(v);
    const double pd = static_cast<double>(p);
    const cplx norm = pw(v[0], val.b1) * pw(cj(v[2]), val.b3) * pw(cj(v[3]), val.d3) * pw(v[1], val.d1) *
                      std::pow(pd, std::min(val.b1, val.d3) + std::min(val.b3, val.d1)) * phiPow(p, val.d1 + val.d3) *
                      std::exp(static_cast<double>(val.a1 + val.a3) * (s + 1.0) * std::log(pd));
    if (std::abs(norm) == 0.0) throw MathError("normalized local factor: vanishing normalization");
    return raw * (1.0 - x) / (1.0 - psi / (pd * pd)) / norm;
}

// ---- named factors ----

cplx factorAp(i64 p, const LocalValues& v, cplx s) {
    const double pd = static_cast<double>(p);
    return (1.0 - psiOf(v) / (pd * pd)) / (1.0 - xOf(v, p, s));
}

cplx factorBp(i64 p, const LocalValues& v, int a1, cplx s) {
    const double pd = static_cast<double>(p);
    return std::pow(pd, a1) * (pd - 1.0) * v[1] * pw(cj(v[3]), 1 + a1) / (1.0 - xOf(v, p, s));
}

cplx factorCp(i64 p, const LocalValues& v, int b3, cplx s) {
    return v[1] * (static_cast<double>(p) - 1.0) * cPlusC(p, v, b3, s) / (1.0 - xOf(v, p, s));
}

cplx factorDp(i64 p, const LocalValues& v, cplx s) {
    return (static_cast<double>(p) - 1.0) * v[1] * cj(v[3]) / (1.0 - xOf(v, p, s));
}

cplx factorEp(i64 p, const LocalValues& v, int b3, cplx s) { return cPlusE(p, v, b3, s) / (1.0 - xOf(v, p, s)); }

cplx factorFp(i64 p, const LocalValues& v, int b3, cplx s) { return cPlusF(p, v, b3, s); }

cplx factorGp(i64 p, const LocalValues& v, int a3, cplx s) { return factorBp(p, mirror(v), a3, s); }
cplx factorHp(i64 p, const LocalValues& v, int b1, cplx s) { return factorCp(p, mirror(v), b1, s); }
cplx factorIp(i64 p, const LocalValues& v, cplx s) { return factorDp(p, mirror(v), s); }
cplx factorJp(i64 p, const LocalValues& v, int b1, cplx s) { return factorEp(p, mirror(v), b1, s); }
cplx factorKp(i64 p, const LocalValues& v, int b1, cplx s) { return factorFp(p, mirror(v), b1, s); }

// The corrected factors are finite geometric sums in y = chi2 conj chi3(p) p^{-s};
// written without the 1/(1 - y) of the displays, so y = 1 needs no special case.
namespace {

cplx geomSum(cplx y, int n) {
    cplx s = 0.0, t = 1.0;
    for (int k = 0; k < n; ++k, t *= y) s += t;
    return s;
}

}  // namespace

cplx cPlusC(i64 p, const LocalValues& v, int b3, cplx s) {
    const double pd = static_cast<double>(p);
    const cplx y = v[1] * cj(v[2]) * pms(p, s);
    return pd * cj(v[2]) * geomSum(y, b3) - cj(v[3]) * y * geomSum(y, b3 - 1);
}

cplx cPlusE(i64 p, const LocalValues& v, int b3, cplx s) {
    const double pd = static_cast<double>(p);
    const cplx y = v[1] * cj(v[2]) * pms(p, s);
    const cplx x = xOf(v, p, s);
    const cplx beta = 1.0 - cj(v[0]) * v[2] / pms(p, s) / pd;
    return (1.0 - x) + beta * y * (geomSum(y, b3) - x * geomSum(y, b3 - 1));
}

cplx cPlusF(i64 p, const LocalValues& v, int b3, cplx s) {
    const double pd = static_cast<double>(p);
    const cplx y = v[1] * cj(v[2]) * pms(p, s);
    const cplx beta = 1.0 - cj(v[0]) * v[2] / pms(p, s) / pd;
    return 1.0 + beta * y * geomSum(y, b3);
}

cplx cPlusH(i64 p, const LocalValues& v, int b1, cplx s) { return cPlusC(p, mirror(v), b1, s); }
cplx cPlusJ(i64 p, const LocalValues& v, int b1, cplx s) { return cPlusE(p, mirror(v), b1, s); }
cplx cPlusK(i64 p, const LocalValues& v, int b1, cplx s) { return cPlusF(p, mirror(v), b1, s); }

cplx cPlusCPrinted(i64 p, const LocalValues& v, int b3, cplx s) {
    const double pd = static_cast<double>(p);
    const cplx z = pms(p, s);
    const cplx num = -v[1] * cj(v[2]) * cj(v[3]) * z + cj(v[2]) * pd +
                     pw(v[1] * cj(v[2]), b3) * (cj(v[3]) - pd * v[2]) * pms(p, static_cast<double>(b3) * s);
    return num / oneMinusY(v, p, s);
}

cplx cPlusEPrinted(i64 p, const LocalValues& v, int b3, cplx s) {
    // the display's (chi2 conj chi3)(p^{b2}) read as b3
    const double pd = static_cast<double>(p);
    const cplx c1b = cj(v[0]), c2 = v[1], c3 = v[2], c3b = cj(v[2]), c4b = cj(v[3]);
    const cplx u = pw(c2 * c3b, b3);
    const cplx num = 1.0 - c1b * c2 / pd + c1b * c2 * c2 * c4b * pms(p, 2.0 + s) - c2 * c4b * pms(p, 1.0 + s) -
                     c1b * c2 * u * pms(p, 1.0 + static_cast<double>(b3) * s) * (1.0 - pd * c3 * c4b) +
                     c2 * u * pms(p, 1.0 + (1.0 + b3) * s) * (c4b - pd * c3b);
    return num / oneMinusY(v, p, s);
}

cplx cPlusFPrinted(i64 p, const LocalValues& v, int b3, cplx s) {
    const double pd = static_cast<double>(p);
    const cplx c1 = v[0], c2 = v[1], c3 = v[2], c3b = cj(v[2]);
    const cplx num = c1 * c3 + c3 - c2 * c3 / pd - pw(c2, 1 + b3) * pw(c3b, b3) * pms(p, 1.0 + (b3 + 1.0) * s) -
                     c1 * pms(p, s - 1.0);
    return num / oneMinusY(v, p, s);
}

cplx factorFpPrinted(i64 p, const LocalValues& v, int b3, cplx s) {
    return v[0] * cj(v[2]) * cPlusFPrinted(p, v, b3, s);
}

DirichletCharacter cPlusPsi(const CharArray& chi) {
    return multiply(multiply(chi[0].conj(), chi[3].conj()), multiply(chi[1], chi[2]));
}

namespace {

cplx invL2(const CharArray& chi) { return 1.0 / lvalue(cPlusPsi(chi), 2.0).value; }

}  // namespace

cplx cplus(const CharArray& chi, i64 l1, i64 l2, cplx s) {
    const LocalFactorContext ctx = LocalFactorContext::make(chi, l1, l2);
    const auto& X = chi;
    const i64 D1 = ctx.D[0], D2 = ctx.D[1], D3 = ctx.D[2], D4 = ctx.D[3];
    const i64 g13 = gcd(ctx.B1, D3), g31 = gcd(ctx.B3, D1);
    cplx val = cj(evalN(X[0], ctx.B1)) * evalN(X[2], ctx.B3) * cj(evalN(X[3], D1)) * evalN(X[1], D3) *
               cj(evalN(X[3], ctx.A1)) * evalN(X[1], ctx.A3) * cj(evalN(X[1], g13)) * evalN(X[3], g31);
    val /= static_cast<double>(g13) * static_cast<double>(g31);
    val *= std::exp(-s * std::log(static_cast<double>(ctx.A1) * static_cast<double>(ctx.A3)));
    val *= invL2(chi);
    for (i64 p : primeDivisors(ctx.B3)) {
        const LocalValues v = localValues(chi, p);
        const int b3 = valuation(ctx.B3, p);
        if (D1 % p == 0) {
            val *= cPlusC(p, v, b3, s);
        } else if (D4 % p == 0) {
            val *= cPlusF(p, v, b3, s);
        } else if (D2 % p != 0) {
            const double pd = static_cast<double>(p);
            val *= cPlusE(p, v, b3, s) / (1.0 - psiOf(v) / (pd * pd));
        }
    }
    for (i64 p : primeDivisors(ctx.B1)) {
        const LocalValues v = localValues(chi, p);
        const int b1 = valuation(ctx.B1, p);
        if (D3 % p == 0) {
            val *= cPlusH(p, v, b1, s);
        } else if (D2 % p == 0) {
            val *= cPlusK(p, v, b1, s);
        } else if (D4 % p != 0) {
            const double pd = static_cast<double>(p);
            val *= cPlusJ(p, v, b1, s) / (1.0 - psiOf(v) / (pd * pd));
        }
    }
    return val;
}

cplx cplusSeries(const CharArray& chi, i64 l1, i64 l2, cplx s) {
    const LocalFactorContext ctx = LocalFactorContext::make(chi, l1, l2);
    cplx val = invL2(chi);
    for (i64 p : ctx.primes()) val *= normalizedLocalFactor(p, localValues(chi, p), ctx.at(p), s);
    return val;
}

cplx cminus(const CharArray& chi, i64 l1, i64 l2, cplx s) { return cplus(minusSwap(chi), l1, l2, s); }

IdentityResult verifyIdentity(const CharArray& chi, i64 l1, i64 l2, cplx s) {
    if (l1 < 1 || l2 < 1) throw UsageError("verifyIdentity: twists must be positive");
    const i64 D12 = chi[0].modulus() * chi[1].modulus(), D34 = chi[2].modulus() * chi[3].modulus();
    const i64 g = gcd(l1, l2);
    const i64 G = gcd(D12 * l1, D34 * l2);
    const double ll = static_cast<double>(l1) * static_cast<double>(l2);
    IdentityResult r;
    r.lhs = cplus(chi, l1 / g, l2 / g, 2.0 * s) * std::exp(s * std::log(ll / (double(g) * double(g))));
    r.rhs = cminus(chi, D12 * l1 / G, D34 * l2 / G, -2.0 * s) * std::exp(-s * std::log(ll / (double(G) * double(G))));
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

IdentityResult verifySecondIdentity(const CharArray& chi, i64 l1, i64 l2) {
    if (l1 < 1 || l2 < 1) throw UsageError("verifySecondIdentity: twists must be positive");
    const i64 g = gcd(l1, l2);
    const i64 D1l1 = chi[0].modulus() * l1, D3l2 = chi[2].modulus() * l2;
    const i64 gp = gcd(D1l1, D3l2);
    IdentityResult r;
    r.lhs = cplus(chi, l1 / g, l2 / g, 0.0);
    r.rhs = productA(permuteChars(chi, {2, 1, 0, 3}), D1l1 / gp, D3l2 / gp).value;
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

cplx upFactor(i64 p, cplx a, cplx b, cplx c, cplx d) {
    const double pd = static_cast<double>(p);
    return 1.0 - (a + b) * (cj(c) + cj(d)) / pd - a * b * cj(c) * cj(d) / (pd * pd);
}

namespace {

struct PairData {
    cplx sum, prod;
    int i, j;
};

std::vector<PairData> unorderedPairs(const std::vector<cplx>& vals) {
    std::vector<PairData> out;
    for (int i = 0; i < static_cast<int>(vals.size()); ++i)
        for (int j = i; j < static_cast<int>(vals.size()); ++j) out.push_back({vals[i] + vals[j], vals[i] * vals[j], i, j});
    return out;
}

struct PairMin {
    double v = 1e300;
    int q = -1;
    std::size_t k = 0;
};

// min over pairs P, Q of |1 - P.sum Q.sum / m - P.prod Q.prod / m^2|
PairMin minOverPairs(const std::vector<PairData>& pairs, const std::vector<i64>& ms, int workers, i64* mOut) {
    std::vector<PairMin> per = parallelMap<PairMin>(
        pairs.size(),
        [&](std::size_t k) {
            PairMin best;
            best.k = k;
            for (std::size_t mi = 0; mi < ms.size(); ++mi) {
                const double md = static_cast<double>(ms[mi]);
                const cplx xs = pairs[k].sum / md, xp = pairs[k].prod / (md * md);
                for (int q = 0; q < static_cast<int>(pairs.size()); ++q) {
                    const double v = std::abs(1.0 - xs * pairs[q].sum - xp * pairs[q].prod);
                    if (v < best.v) {
                        best.v = v;
                        best.q = q;
                        best.k = k * 64 + mi;
                    }
                }
            }
            return best;
        },
        workers);
    PairMin best;
    for (const auto& b : per)
        if (b.v < best.v) best = b;
    if (mOut) *mOut = ms[best.k % 64];
    best.k /= 64;
    return best;
}

}  // namespace

CyclotomicScanResult cyclotomicScan(int maxOrder, const std::vector<i64>& ms, int workers) {
    if (maxOrder < 1 || ms.empty() || ms.size() > 64) throw UsageError("cyclotomicScan: bad arguments");
    std::vector<Angle> angles;
    for (i64 n = 1; n <= maxOrder; ++n)
        for (i64 k = 0; k < n; ++k)
            if (gcd(k, n) == 1) angles.push_back({k, n});
    std::vector<cplx> vals;
    for (const Angle& a : angles) vals.push_back(rootOfUnity(a));
    const auto pairs = unorderedPairs(vals);
    CyclotomicScanResult r;
    const PairMin b = minOverPairs(pairs, ms, workers, &r.m);
    r.minModulus = b.v;
    r.argmin = {angles[pairs[b.k].i], angles[pairs[b.k].j], angles[pairs[b.q].i], angles[pairs[b.q].j]};
    r.tuples = static_cast<std::uint64_t>(pairs.size()) * pairs.size() * ms.size();
    return r;
}

UpScanResult upFactorScan(i64 maxConductor, i64 maxPrime, bool includeZero, int workers) {
    std::vector<DirichletCharacter> chars;
    for (i64 m = 1; m <= maxConductor; ++m)
        for (const auto& c : characterTable(m))
            if (c.isPrimitive()) chars.push_back(c);
    UpScanResult res;
    res.minModulus = 1e300;
    for (i64 p : primesUpTo(maxPrime - 1)) {
        double v;
        int count = 0;
        if (p <= 3) {
            std::set<std::pair<i64, i64>> seen;
            std::vector<cplx> vals;
            for (const auto& c : chars) {
                auto a = c.angle(p);
                if (!a && !includeZero) continue;
                std::pair<i64, i64> key{-1, 0};
                if (a) {
                    const i64 g = gcd(a->num, a->den);
                    key = {a->num / g, a->den / g};
                }
                if (seen.insert(key).second) vals.push_back(a ? rootOfUnity(*a) : cplx(0.0));
            }
            count = static_cast<int>(vals.size());
            // U_p = 1 - (a+b) conj(c+d)/p - ab conj(cd)/p^2; the value set is closed under conjugation
            v = minOverPairs(unorderedPairs(vals), {p}, workers, nullptr).v;
        } else {
            const double pd = static_cast<double>(p);
            v = 1.0 - 4.0 / pd - 1.0 / (pd * pd);
        }
        if (v < res.minModulus) {
            res.minModulus = v;
            res.prime = p;
            res.valueCount = count;
        }
    }
    return res;
}

namespace {

const std::vector<DirichletCharacter>& primitiveChars(i64 m) {
    static std::mutex mu;
    static std::map<i64, std::vector<DirichletCharacter>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(m);
    if (it == cache.end()) {
        std::vector<DirichletCharacter> v;
        for (const auto& c : characterTable(m))
            if (c.isPrimitive()) v.push_back(c);
        it = cache.emplace(m, std::move(v)).first;
    }
    return it->second;
}

const std::array<cplx, 5> kSGrid = {{{0.1, 0.0}, {-0.2, 0.3}, {0.0, 0.25}, {0.3, 0.0}, {-0.1, -0.1}}};

}  // namespace

IdentityConfig randomIdentityConfig(std::uint64_t seed) {
    static const i64 kModuli[] = {1, 1, 1, 3, 5, 7, 11, 13};
    std::mt19937_64 rng(seed);
    IdentityConfig c;
    for (;;) {
        bool ok = true;
        for (int r = 0; r < 4; ++r) c.D[r] = kModuli[rng() % std::size(kModuli)];
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (gcd(c.D[i], c.D[j]) != 1) ok = false;
        if (ok) break;
    }
    for (int r = 0; r < 4; ++r) {
        const auto& list = primitiveChars(c.D[r]);
        c.chi[r] = list[rng() % list.size()];
        c.ids[r] = c.chi[r].id();
    }
    c.l1 = 1 + static_cast<i64>(rng() % 60);
    c.l2 = 1 + static_cast<i64>(rng() % 60);
    c.s = kSGrid[rng() % 5];
    return c;
}

std::vector<FuzzRecord> fuzzIdentities(int trials, std::uint64_t seed, int workers) {
    if (trials < 0) throw UsageError("fuzzIdentities: trials must be non-negative");
    const std::size_t n = static_cast<std::size_t>(trials);
    return parallelMap<FuzzRecord>(
        2 * n,
        [&](std::size_t i) {
            FuzzRecord rec;
            rec.config = randomIdentityConfig(seed * 1000003ULL + i % n);
            const auto& c = rec.config;
            IdentityResult r;
            if (i < n) {
                rec.identity = "identity";
                r = verifyIdentity(c.chi, c.l1, c.l2, c.s);
            } else {
                rec.identity = "secondidentity";
                rec.config.s = 0.0;
                r = verifySecondIdentity(c.chi, c.l1, c.l2);
            }
            rec.lhs = r.lhs;
            rec.rhs = r.rhs;
            rec.residual = r.residual;
            return rec;
        },
        workers);
}

const std::array<cplx, 5>& identitySGrid() { return kSGrid; }

IdentityConfig randomDiagonalConfig(std::uint64_t seed) {
    static const i64 kModuli[] = {1, 1, 3, 5, 7, 11, 13};
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    IdentityConfig c;
    for (;;) {
        bool ok = true;
        for (int r = 0; r < 4; ++r) c.D[r] = kModuli[rng() % std::size(kModuli)];
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (gcd(c.D[i], c.D[j]) != 1) ok = false;
        // with coprime moduli chi_i conj chi_j is principal only when both are trivial
        for (int i = 0; i < 2; ++i)
            for (int j = 2; j < 4; ++j)
                if (c.D[i] == 1 && c.D[j] == 1) ok = false;
        if (ok) break;
    }
    for (int r = 0; r < 4; ++r) {
        const auto& list = primitiveChars(c.D[r]);
        c.chi[r] = list[rng() % list.size()];
        c.ids[r] = c.chi[r].id();
    }
    do {
        c.l1 = 1 + static_cast<i64>(rng() % 12);
        c.l2 = 1 + static_cast<i64>(rng() % 12);
    } while (gcd(c.l1, c.l2) != 1);
    c.s = 2.0;
    return c;
}

DiagonalCheck diagonalFactorization(const CharArray& chi, i64 l1, i64 l2, cplx s, i64 N) {
    if (l1 < 1 || l2 < 1 || gcd(l1, l2) != 1) throw UsageError("diagonalFactorization: l1, l2 coprime positive");
    if (N < 1) throw UsageError("diagonalFactorization: N must be positive");
    // Dirichlet convolution of two character tables up to M
    auto conv = [](const DirichletCharacter& a, const DirichletCharacter& b, i64 M) {
        std::vector<cplx> out(static_cast<std::size_t>(M + 1), 0.0);
        const auto ta = a.table(), tb = b.table();
        const i64 ma = a.modulus(), mb = b.modulus();
        for (i64 d = 1; d <= M; ++d) {
            const cplx u = ta[static_cast<std::size_t>(d % ma)];
            if (u == 0.0) continue;
            for (i64 e = 1; d * e <= M; ++e) out[static_cast<std::size_t>(d * e)] += u * tb[static_cast<std::size_t>(e % mb)];
        }
        return out;
    };
    const auto ab = conv(chi[0], chi[1], l2 * N);
    const auto cd = conv(chi[2].conj(), chi[3].conj(), l1 * N);
    std::vector<cplx> terms(static_cast<std::size_t>(N));
    for (i64 n = 1; n <= N; ++n)
        terms[static_cast<std::size_t>(n - 1)] = ab[static_cast<std::size_t>(l2 * n)] * cd[static_cast<std::size_t>(l1 * n)] *
                                                 std::exp(-s * std::log(static_cast<double>(n)));
    DiagonalCheck out;
    out.N = N;
    out.series = pairwiseSum(terms);
    cplx L = 1.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 4; ++j) L *= lvalue(multiply(chi[i], chi[j].conj()), s).value;
    out.product = factorF(chi, l1, l2, s) * factorH(chi, s).value * L;
    out.residual = std::abs(out.series - out.product);
    return out;
}

}  // namespace fourl
