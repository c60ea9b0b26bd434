#include "fourl/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "fourl/errors.hpp"
#include "fourl/lfun.hpp"
#include "fourl/parallel.hpp"

namespace fourl {

double solveLambda() {
    // f is decreasing on [0, 1] with f(0) = 1 > 0 > f(1)
    auto f = [](double x) { return std::exp(-x) - x - x * x / 2; };
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (f(mid) > 0 ? lo : hi) = mid;
    }
    return std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
}

double MollifierSpec::endpoint(int j) const { return std::exp(beta.at(j) * std::log(double(q))); }

std::vector<i64> MollifierSpec::blockPrimes(int j) const {
    const double hi = endpoint(j) * (1 + 1e-12);
    const double lo = j == 0 ? 1.0 : endpoint(j - 1) * (1 + 1e-12);
    std::vector<i64> out;
    for (i64 p : primesUpTo(static_cast<i64>(hi)))
        if (double(p) > lo) out.push_back(p);
    return out;
}

void MollifierSpec::validate() const {
    if (q < 5 || !isPrime(q)) throw UsageError("mollifier: q must be a prime >= 5");
    if (k < 1) throw UsageError("mollifier: k must be positive");
    const std::size_t n = static_cast<std::size_t>(K) + 1;
    if (K < 0 || beta.size() != n || ell.size() != n || s.size() != n)
        throw UsageError("mollifier: beta, ell and s need K + 1 entries");
    for (std::size_t j = 0; j < n; ++j) {
        if (!(beta[j] > 0)) throw UsageError("mollifier: beta_j must be positive");
        if (j > 0 && beta[j] <= beta[j - 1]) throw UsageError("mollifier: beta must increase");
        if (ell[j] < 0 || s[j] < 0 || s[j] % 2) throw UsageError("mollifier: ell_j >= 0 and s_j even");
    }
}

double conditionC(int k) {
    const double a = 4 * std::pow(std::exp(0.25) - 1, 4) / (std::exp(1.0) * std::pow(k + 2.0, 4));
    const double b = 0.25 * std::pow(std::log(2.0) / 60, 4.0 / 3.0);
    return std::min(a, b);
}

namespace {

void fillCaps(MollifierSpec& sp, bool floorAtTwo) {
    sp.s.assign(sp.beta.size(), 0);
    sp.ell.assign(sp.beta.size(), 0);
    for (std::size_t j = 0; j < sp.beta.size(); ++j) {
        const double sj = 1.0 / (8 * sp.beta[j]);
        sp.s[j] = sj > 1e9 ? 2'000'000'000 : 2 * static_cast<int>(std::floor(sj));
        sp.ell[j] = 2 * static_cast<int>(std::floor(std::pow(double(sp.s[j]), 0.75) / 2));
        if (floorAtTwo && sp.s[j] < 2) {
            sp.s[j] = 2;
            sp.flags.push_back("s_" + std::to_string(j) + " floored at 2");
        }
        if (floorAtTwo && sp.ell[j] < 2) {
            sp.ell[j] = 2;
            sp.flags.push_back("ell_" + std::to_string(j) + " floored at 2");
        }
    }
}

}  // namespace

MollifierSpec paperDefaultSpec(i64 q, int k) {
    MollifierSpec sp;
    sp.q = q;
    sp.k = k;
    sp.lambda = solveLambda();
    sp.paperDefaults = true;
    const double L5 = std::pow(std::log(std::log(double(q))), 5);
    const double c = conditionC(k) * (1 - 1e-9);
    int K = 0;
    while (std::exp(double(K)) / L5 < c) ++K;
    for (int j = 0; j < K; ++j) sp.beta.push_back(std::exp(double(j)) / L5);
    sp.beta.push_back(c);
    if (K == 0) sp.flags.push_back("ladder degenerate: beta_0 = e^0/(log log q)^5 already exceeds c, K = 0");
    sp.K = K;
    fillCaps(sp, false);
    if (sp.blockPrimes(K).empty()) sp.flags.push_back("no primes below q^{beta_K}");
    return sp;
}

MollifierSpec scaledSpec(i64 q, int k) {
    MollifierSpec sp;
    sp.q = q;
    sp.k = k;
    sp.lambda = solveLambda();
    const double lq = std::log(double(q));
    const double b0 = std::log(11.0) / lq;
    int K = 0;
    while (std::exp(b0 * std::exp(K + 1.0) * lq) <= 1e4) ++K;
    for (int j = 0; j <= K; ++j) sp.beta.push_back(b0 * std::exp(double(j)));
    sp.K = K;
    fillCaps(sp, true);
    sp.validate();
    return sp;
}

MollifierSpec customSpec(i64 q, int k, std::vector<double> beta, std::vector<int> ell, std::vector<int> s) {
    MollifierSpec sp;
    sp.q = q;
    sp.k = k;
    sp.lambda = solveLambda();
    sp.K = static_cast<int>(beta.size()) - 1;
    if (s.empty()) s.assign(beta.size(), 2);
    sp.beta = std::move(beta);
    sp.ell = std::move(ell);
    sp.s = std::move(s);
    sp.validate();
    return sp;
}

GateReport parameterGates(const MollifierSpec& spec) {
    GateReport g;
    const int K = spec.K;
    const double k = spec.k;
    for (int r = 0; r <= K; ++r) g.first += spec.ell[r] * spec.beta[r];
    g.first *= k + 2;
    g.holds = g.first < 1;
    for (int j = 0; j < K; ++j) {
        double a = 0, b = 0;
        for (int r = 0; r <= j; ++r) a += spec.ell[r] * spec.beta[r];
        for (int r = j + 1; r <= K; ++r) b += spec.ell[r] * spec.beta[r];
        const double v = (k + 2) * a + k * b + 2 * spec.s[j + 1] * spec.beta[j + 1];
        g.perBlock.push_back(v);
        if (!(v < 1)) g.holds = false;
    }
    return g;
}

double smoothingA(i64 p, int u, const MollifierSpec& spec) {
    if (u < 0 || u > spec.K) throw UsageError("smoothingA: index out of range");
    const double x = std::log(double(p)) / (spec.beta[u] * std::log(double(spec.q)));
    if (p < 2 || x > 1 + 1e-12) throw UsageError("smoothingA: p beyond q^{beta_u}");
    return std::max(0.0, 1 - x) * std::exp(-spec.lambda * x);
}

double smoothingB(i64 p, int j, const MollifierSpec& spec) {
    if (j < 0 || j > spec.K) throw UsageError("smoothingB: index out of range");
    const double y = 2 * std::log(double(p)) / (spec.beta[j] * std::log(double(spec.q)));
    if (p < 2 || y > 1 + 1e-12) throw UsageError("smoothingB: p beyond q^{beta_j/2}");
    return std::max(0.0, 1 - y) * std::exp(-spec.lambda * y);
}

double smoothingAn(i64 n, int u, const MollifierSpec& spec) {
    double v = 1.0;
    for (auto [p, e] : factorize(n)) v *= std::pow(smoothingA(p, u, spec), e);
    return v;
}

NuAlpha nuAlpha(i64 n, int k, int ell) {
    if (n < 1) throw UsageError("nuAlpha: n must be positive");
    const auto f = factorize(n);
    NuAlpha r{1.0, 0.0};
    int omega = 0;
    for (auto [p, e] : f) {
        r.nu /= std::tgamma(e + 1.0);
        omega += e;
    }
    // mu kills every non-squarefree part, so a prime of exponent e goes into e distinct parts
    std::vector<int> load(static_cast<std::size_t>(k), 0);
    std::function<double(std::size_t)> count = [&](std::size_t i) -> double {
        if (i == f.size()) return 1.0;
        const int e = f[i].second;
        if (e > k) return 0.0;
        double total = 0;
        std::vector<int> pick(static_cast<std::size_t>(e));
        std::function<void(int, int)> choose = [&](int start, int depth) {
            if (depth == e) {
                total += count(i + 1);
                return;
            }
            for (int part = start; part < k; ++part) {
                if (ell >= 0 && load[part] >= ell) continue;
                ++load[part];
                choose(part + 1, depth + 1);
                --load[part];
            }
        };
        choose(0, 0);
        return total;
    };
    r.alpha = (omega % 2 ? -1.0 : 1.0) * count(0);
    return r;
}

DirichletPolynomial blockPolynomial(const MollifierSpec& spec, int j) {
    spec.validate();
    const auto primes = spec.blockPrimes(j);
    std::vector<double> a;
    for (i64 p : primes) a.push_back(smoothingA(p, spec.K, spec));
    DirichletPolynomial poly;
    poly.cutoff = 1;
    std::function<void(std::size_t, int, i64, double)> walk = [&](std::size_t from, int used, i64 n, double c) {
        poly.coeff[n] = c;
        poly.cutoff = std::max(poly.cutoff, n);
        if (used == spec.ell[j]) return;
        for (std::size_t i = from; i < primes.size(); ++i) {
            if (n > (i64(1) << 62) / primes[i]) throw MathError("mollifier block support overflows; rescale beta");
            walk(i + 1, used + 1, n * primes[i], -c * a[i]);
        }
    };
    walk(0, 0, 1, 1.0);
    for (const auto& [n, c] : poly.coeff) {
        std::vector<i64> b(static_cast<std::size_t>(spec.K) + 1, 1);
        b[static_cast<std::size_t>(j)] = n;
        poly.blocks[n] = std::move(b);
    }
    return poly;
}

DirichletPolynomial buildMollifier(const MollifierSpec& spec, double) {
    constexpr std::size_t kMaxTerms = 20'000'000;
    DirichletPolynomial M;
    M.coeff[1] = 1.0;
    M.blocks[1] = std::vector<i64>(static_cast<std::size_t>(spec.K) + 1, 1);
    M.cutoff = 1;
    for (int j = 0; j <= spec.K; ++j) {
        const auto B = blockPolynomial(spec, j);
        if (M.coeff.size() * B.coeff.size() > kMaxTerms)
            throw MathError("mollifier support above " + std::to_string(kMaxTerms) + " terms; rescale beta or ell");
        if (static_cast<__int128>(M.cutoff) * B.cutoff > (static_cast<__int128>(1) << 62))
            throw MathError("mollifier cutoff overflows; rescale beta or ell");
        DirichletPolynomial next;
        next.cutoff = M.cutoff * B.cutoff;
        for (const auto& [n, c] : M.coeff)
            for (const auto& [m, d] : B.coeff) {
                next.coeff[n * m] = c * d;
                auto blk = M.blocks[n];
                blk[static_cast<std::size_t>(j)] = m;
                next.blocks[n * m] = std::move(blk);
            }
        M = std::move(next);
    }
    return M;
}

DirichletPolynomial blockPowerExpansion(const MollifierSpec& spec, int j, int k) {
    spec.validate();
    const auto primes = spec.blockPrimes(j);
    const int cap = k * spec.ell[j];
    DirichletPolynomial poly;
    poly.cutoff = 1;
    std::function<void(std::size_t, int, i64)> walk = [&](std::size_t from, int omega, i64 n) {
        const double al = nuAlpha(n, k, spec.ell[j]).alpha;
        if (al != 0) {
            poly.coeff[n] = smoothingAn(n, spec.K, spec) * al;
            poly.cutoff = std::max(poly.cutoff, n);
        }
        if (omega == cap) return;
        for (std::size_t i = from; i < primes.size(); ++i) {
            i64 m = n;
            for (int e = 1; e <= k && omega + e <= cap; ++e) {
                if (m > (i64(1) << 62) / primes[i]) throw MathError("power expansion overflows");
                m *= primes[i];
                walk(i + 1, omega + e, m);
            }
        }
    };
    walk(0, 0, 1);
    return poly;
}

cplx evaluateM(const DirichletPolynomial& poly, const DirichletCharacter& chi, double t) {
    const auto tab = chi.table();
    const i64 m = chi.modulus();
    std::vector<cplx> terms;
    terms.reserve(poly.coeff.size());
    for (const auto& [n, c] : poly.coeff) {
        const cplx v = tab[static_cast<std::size_t>(n % m)];
        if (v == 0.0) continue;
        terms.push_back(c * v * std::exp(-cplx(0.5, t) * std::log(double(n))));
    }
    return pairwiseSum(terms);
}

cplx primeSumP(const DirichletCharacter& chi, const MollifierSpec& spec, int j, int u, double t) {
    if (j < 0 || j > spec.K || u < j || u > spec.K) throw UsageError("primeSumP: need 0 <= j <= u <= K");
    std::vector<cplx> terms;
    for (i64 p : spec.blockPrimes(j))
        terms.push_back(chi(p) * smoothingA(p, u, spec) * std::exp(-cplx(0.5, t) * std::log(double(p))));
    return pairwiseSum(terms);
}

double truncExp(int ell, double x) {
    double term = 1.0, s = 1.0;
    for (int i = 1; i <= ell; ++i) {
        term *= x / i;
        s += term;
    }
    return s;
}

namespace {

void assertGates(const MollifierSpec& spec) {
    if (!spec.paperDefaults) return;
    const GateReport g = parameterGates(spec);
    if (!g.holds) throw MathError("parameter gate (k+2) sum ell_r beta_r < 1 fails: " + std::to_string(g.first));
}

}  // namespace

double factorD(const DirichletCharacter& chi, const MollifierSpec& spec, int j, int k, double t) {
    assertGates(spec);
    if (j < 0 || j > spec.K) throw UsageError("factorD: j out of range");
    double v = 1.0;
    for (int r = 0; r <= j; ++r) {
        const double P = primeSumP(chi, spec, r, j, t).real();
        v *= (1 + std::exp(-spec.ell[r] / 2.0)) * truncExp(spec.ell[r], k * P);
    }
    return v;
}

double factorS(const DirichletCharacter& chi, const MollifierSpec& spec, int j, int k, double t) {
    assertGates(spec);
    if (j < 0 || j > spec.K) throw UsageError("factorS: j out of range");
    const double hi = std::exp(spec.beta[j] * std::log(double(spec.q)) / 2) * (1 + 1e-12);
    std::vector<cplx> terms;
    for (i64 p : primesUpTo(static_cast<i64>(hi)))
        terms.push_back(chi(p * p) * smoothingB(p, j, spec) * std::exp(-cplx(1.0, 2 * t) * std::log(double(p))));
    return std::exp(k * pairwiseSum(terms).real());
}

PowerIdentityResult verifyPowerExpansion(const MollifierSpec& spec, int j, int k, const DirichletCharacter& chi,
                                         double t) {
    PowerIdentityResult r;
    r.expanded = evaluateM(blockPowerExpansion(spec, j, k), chi, t);
    r.power = std::pow(evaluateM(blockPolynomial(spec, j), chi, t), k);
    r.residual = std::abs(r.expanded - r.power);
    return r;
}

namespace {

// Precomputed n^{-1/2-it} for repeated evaluation against many characters.
struct FastPoly {
    std::vector<i64> n;
    std::vector<cplx> w;
    FastPoly(const DirichletPolynomial& p, double t) {
        for (const auto& [m, c] : p.coeff) {
            n.push_back(m);
            w.push_back(c * std::exp(-cplx(0.5, t) * std::log(double(m))));
        }
    }
    cplx operator()(const DirichletCharacter& chi) const {
        const auto tab = chi.table();
        const i64 m = chi.modulus();
        std::vector<cplx> terms(n.size());
        for (std::size_t i = 0; i < n.size(); ++i) terms[i] = w[i] * tab[static_cast<std::size_t>(n[i] % m)];
        return pairwiseSum(terms);
    }
};

}  // namespace

double mollifiedMomentAverage(const MollifierSpec& spec, const DirichletCharacter& psi, int k, double t, int workers) {
    const auto chars = evenPrimitiveCharacters(spec.q);
    const FastPoly M(buildMollifier(spec, t), t);
    const HurwitzTable H(spec.q * psi.modulus(), cplx(0.5, t));
    const auto vals = parallelMap<double>(
        chars.size(),
        [&](std::size_t i) {
            const DirichletCharacter x = multiply(chars[i], psi);
            return std::pow(std::abs(H(x) * M(x)), k);
        },
        workers);
    return pairwiseSum(vals) / double(chars.size());
}

HolderDemo holderDemo(const MollifierSpec& spec, std::array<i64, 4> D, double t, int workers) {
    HolderDemo out;
    out.q = spec.q;
    out.k = 6;
    const auto chars = evenPrimitiveCharacters(spec.q);
    out.characterCount = static_cast<int>(chars.size());
    std::array<DirichletCharacter, 4> twist;
    std::vector<HurwitzTable> tables;
    for (int j = 0; j < 4; ++j) {
        const auto list = evenPrimitiveCharacters(D[j]);
        if (list.empty()) throw UsageError("holderDemo: no even primitive character mod " + std::to_string(D[j]));
        twist[j] = list[0];
        tables.emplace_back(spec.q * D[j], cplx(0.5, t));
    }
    const FastPoly M(buildMollifier(spec, t), t);
    struct Row {
        std::array<cplx, 4> L, LM;
    };
    const auto rows = parallelMap<Row>(
        chars.size(),
        [&](std::size_t i) {
            Row r;
            for (int j = 0; j < 4; ++j) {
                const DirichletCharacter x = multiply(chars[i], twist[j]);
                r.L[j] = tables[j](x);
                r.LM[j] = r.L[j] * M(x);
            }
            return r;
        },
        workers);
    std::array<std::vector<double>, 4> six;
    std::vector<cplx> mixed;
    for (const Row& r : rows) {
        if (std::abs(r.L[0] * r.L[1] * r.L[2] * r.L[3]) > 1e-12) ++out.nonvanishing;
        for (int j = 0; j < 4; ++j) six[j].push_back(std::pow(std::abs(r.LM[j]), 6));
        mixed.push_back(r.LM[0] * r.LM[1] * std::conj(r.LM[2] * r.LM[3]));
    }
    out.lhs = double(out.nonvanishing) * out.nonvanishing;
    for (int j = 0; j < 4; ++j) {
        out.sixthMoments[j] = pairwiseSum(six[j]);
        out.lhs *= out.sixthMoments[j];
    }
    out.mixed = pairwiseSum(mixed);
    out.rhs = std::pow(std::abs(out.mixed), 6);
    out.holds = out.lhs >= out.rhs * (1 - 1e-12);
    return out;
}

}  // namespace fourl
