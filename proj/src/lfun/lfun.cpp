#include "fourl/lfun.hpp"

#include <cmath>
#include <numbers>

#include "fourl/errors.hpp"
#include "fourl/parallel.hpp"

namespace fourl {

namespace {

// B_{2k} / (2k)!, k = 1..15
const double kBernoulliOverFactorial[15] = {
    1.0 / 6 / 2,
    -1.0 / 30 / 24,
    1.0 / 42 / 720,
    -1.0 / 30 / 40320,
    5.0 / 66 / 3628800,
    -691.0 / 2730 / 479001600,
    7.0 / 6 / 87178291200.0,
    -3617.0 / 510 / 20922789888000.0,
    43867.0 / 798 / 6402373705728000.0,
    -174611.0 / 330 / 2432902008176640000.0,
    854513.0 / 138 / 1.1240007277776077e21,
    -236364091.0 / 2730 / 6.204484017332394e23,
    8553103.0 / 6 / 4.0329146112660565e26,
    -23749461029.0 / 870 / 3.0488834461171387e29,
    8615841276005.0 / 14322 / 2.6525285981219107e32,
};

}  // namespace

std::string methodName(LMethod m) {
    switch (m) {
        case LMethod::Hurwitz: return "hurwitz";
        case LMethod::Afe: return "afe";
        case LMethod::Euler: return "euler";
        case LMethod::Digamma: return "digamma";
    }
    return "?";
}

cplx hurwitzZeta(cplx s, double a) {
    if (!(a > 0.0 && a <= 1.0)) throw UsageError("hurwitzZeta: need 0 < a <= 1");
    if (s == cplx(1.0, 0.0)) throw MathError("hurwitzZeta: pole at s = 1");
    const int N = static_cast<int>(std::abs(s)) + 20;
    cplx sum = 0.0;
    for (int n = N - 1; n >= 0; --n) sum += std::exp(-s * std::log(n + a));
    const double Na = N + a;
    const double lNa = std::log(Na);
    const cplx pw = std::exp(-s * lNa);  // (N+a)^{-s}
    sum += pw * Na / (s - 1.0) + 0.5 * pw;
    cplx rising = s;                // s (s+1) ... (s+2k-2)
    cplx p = pw / Na;               // (N+a)^{-s-2k+1}
    const double inv2 = 1.0 / (Na * Na);
    for (int k = 1; k <= 15; ++k) {
        sum += kBernoulliOverFactorial[k - 1] * rising * p;
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        p *= inv2;
    }
    return sum;
}

cplx lvalueAt1(const DirichletCharacter& chi) {
    if (chi.isPrincipal()) throw MathError("L(1, chi) has a pole for principal chi");
    const i64 m = chi.modulus();
    std::vector<cplx> terms;
    for (i64 a = 1; a < m; ++a) {
        cplx c = chi(a);
        if (c != 0.0) terms.push_back(c * digamma(static_cast<double>(a) / m));
    }
    return -pairwiseSum(terms) / static_cast<double>(m);
}

LValue lvalue(const DirichletCharacter& chi, cplx s) {
    const i64 m = chi.modulus();
    if (s == cplx(1.0, 0.0)) {
        if (chi.isPrincipal()) throw MathError("L(s, chi) has a pole at s = 1 for principal chi");
        return {s, chi.id(), lvalueAt1(chi), LMethod::Digamma, 1e-13};
    }
    HurwitzTable tab(m, s);
    cplx v = tab(chi);
    return {s, chi.id(), v, LMethod::Hurwitz, 1e-12 * std::max(1.0, std::abs(v))};
}

LValue lvalueEuler(const DirichletCharacter& chi, cplx s, i64 primeCutoff) {
    const double sigma = s.real();
    if (!(sigma > 1.0)) throw UsageError("lvalueEuler: need Re s > 1");
    cplx logv = 0.0;
    for (i64 p : primesUpTo(primeCutoff)) logv -= std::log(1.0 - chi(p) * std::exp(-s * std::log(static_cast<double>(p))));
    const cplx v = std::exp(logv);
    // |log(1 - z)| <= 2|z| for |z| <= 1/2; sum_{n > P} n^{-sigma} <= P^{1-sigma}/(sigma - 1)
    const double P = static_cast<double>(primeCutoff);
    const double tail = 2.0 * std::pow(P, 1.0 - sigma) / (sigma - 1.0);
    return {s, chi.id(), v, LMethod::Euler, std::abs(v) * std::expm1(tail)};
}

HurwitzTable::HurwitzTable(i64 modulus, cplx s) : M_(modulus), s_(s) {
    if (modulus < 1) throw UsageError("HurwitzTable: modulus must be positive");
    if (s == cplx(1.0, 0.0)) throw MathError("HurwitzTable: s = 1");
    z_.resize(static_cast<std::size_t>(M_ + 1));
    for (i64 a = 1; a <= M_; ++a) z_[a] = hurwitzZeta(s, static_cast<double>(a) / M_);
    scale_ = std::exp(-s * std::log(static_cast<double>(M_)));
}

cplx HurwitzTable::operator()(const DirichletCharacter& chi) const {
    if (M_ % chi.modulus() != 0) throw UsageError("HurwitzTable: character modulus must divide table modulus");
    std::vector<cplx> terms;
    terms.reserve(static_cast<std::size_t>(M_));
    for (i64 a = 1; a <= M_; ++a) {
        if (gcd(a, M_) != 1) continue;
        terms.push_back(chi(a) * z_[a]);
    }
    return scale_ * pairwiseSum(terms);
}

cplx HurwitzTable::fromValues(const std::vector<cplx>& values) const {
    std::vector<cplx> terms(static_cast<std::size_t>(M_));
    for (i64 a = 1; a <= M_; ++a) terms[a - 1] = values[static_cast<std::size_t>(a % M_)] * z_[a];
    return scale_ * pairwiseSum(terms);
}

cplx completedLambda(const DirichletCharacter& chi, cplx s) {
    if (chi.modulus() <= 1 || !chi.isPrimitive() || !chi.isEven())
        throw UsageError("completedLambda: need an even primitive character of modulus > 1");
    const double m = static_cast<double>(chi.modulus());
    const cplx L = lvalue(chi, 0.5 + s).value;
    return std::exp(s / 2.0 * std::log(m / std::numbers::pi) + logGamma((0.5 + s) / 2.0)) * L;
}

double feResidual(const DirichletCharacter& chi, cplx s) {
    return std::abs(completedLambda(chi, s) - epsilon(chi) * completedLambda(chi.conj(), -s));
}

cplx rootNumber(const Quadruple& Q) {
    const auto& c = Q.chi;
    return c[0](Q.q) * c[1](Q.q) * std::conj(c[2](Q.q)) * std::conj(c[3](Q.q)) * epsilon(c[0]) * epsilon(c[1]) *
           epsilon(c[2].conj()) * epsilon(c[3].conj());
}

std::vector<cplx> directProductValues(const Quadruple& Q, const std::vector<DirichletCharacter>& chars) {
    const cplx sp(0.5, Q.t), sm(0.5, -Q.t);
    std::vector<cplx> out(chars.size(), 1.0);
    for (int j = 0; j < 4; ++j) {
        const i64 M = Q.q * Q.D[j];
        HurwitzTable tab(M, j < 2 ? sp : sm);
        const auto tj = Q.chi[j].table();
        auto vals = parallelMap<cplx>(chars.size(), [&](std::size_t i) {
            const auto tc = chars[i].table();
            std::vector<cplx> v(static_cast<std::size_t>(M));
            for (i64 a = 0; a < M; ++a) {
                cplx x = tc[a % Q.q] * tj[a % Q.D[j]];
                v[a] = j < 2 ? x : std::conj(x);
            }
            return tab.fromValues(v);
        });
        for (std::size_t i = 0; i < chars.size(); ++i) out[i] *= vals[i];
    }
    return out;
}

cplx directProductValue(const Quadruple& Q, const DirichletCharacter& chi) {
    return directProductValues(Q, {chi})[0];
}

// ---------------------------------------------------------------- AFE

namespace {

// (a * b)(n) n^{-1/2 - i t} for n <= K, zero when q | n.
std::vector<cplx> convolutionCoefficients(const DirichletCharacter& a, const DirichletCharacter& b, double t,
                                          i64 q, i64 K, const std::vector<std::int32_t>& spf) {
    std::vector<cplx> f(static_cast<std::size_t>(K + 1), 0.0);
    f[1] = 1.0;
    for (i64 n = 2; n <= K; ++n) {
        const i64 p = spf[n];
        i64 r = n;
        int e = 0;
        while (r % p == 0) {
            r /= p;
            ++e;
        }
        if (r > 1) {
            f[n] = f[r] * f[n / r];
            continue;
        }
        if (p == q) continue;
        const cplx ap = a(p), bp = b(p);
        cplx s = 0.0, pa = 1.0;
        for (int i = 0; i <= e; ++i) {
            cplx pb = 1.0;
            for (int k = 0; k < e - i; ++k) pb *= bp;
            s += pa * pb;
            pa *= ap;
        }
        f[n] = s;
    }
    for (i64 n = 1; n <= K; ++n) {
        if (f[n] == 0.0) continue;
        const double ln = std::log(static_cast<double>(n));
        f[n] *= std::polar(std::exp(-0.5 * ln), -t * ln);
    }
    return f;
}

}  // namespace

AfeEngine::AfeEngine(const Quadruple& Q, AfeOptions opt) : Q_(Q), opt_(opt) {
    Q_.validate();
    const double qh2 = Q_.qhat() * Q_.qhat();
    WeightV V(Q_.t, opt_.sigma, std::min(1e-15, opt_.tolerance * 1e-3));
    X0_ = V.decayPoint(opt_.tolerance);
    const double Kd = std::floor(qh2 * X0_);
    if (Kd > opt_.maxCutoff)
        throw MathError("AFE truncation budget exceeded: cutoff " + std::to_string(Kd) + " > " +
                        std::to_string(opt_.maxCutoff));
    K_ = static_cast<i64>(Kd);

    // Tail envelope: sum_{k > K} d_4(k) k^{-1/2} |V(k/qh^2)| by an integral.
    {
        double acc = 0.0, x = X0_;
        const double r = 1.05;
        while (x < 1e14) {
            const double v = std::fabs(V(x));
            const double lk = std::log(qh2 * x) + 1.0;
            acc += lk * lk * lk / 6.0 * std::sqrt(qh2 / x) * v * x * (r - 1.0);
            if (v < 1e-40) break;
            x *= r;
        }
        tail_ = 2.0 * acc;
    }

    const auto spf = spfSieve(K_);
    const auto alpha = convolutionCoefficients(Q_.chi[0], Q_.chi[1], Q_.t, Q_.q, K_, spf);
    const auto beta = convolutionCoefficients(Q_.chi[2].conj(), Q_.chi[3].conj(), -Q_.t, Q_.q, K_, spf);

    WeightVTable vt(V, 0.5 / qh2, 2.0 * X0_ + 1.0);
    std::vector<double> vk(static_cast<std::size_t>(K_ + 1));
    for (i64 k = 1; k <= K_; ++k) vk[k] = vt(static_cast<double>(k) / qh2);

    const i64 q = Q_.q;
    std::vector<i64> inv(static_cast<std::size_t>(q), 0);
    for (i64 r = 1; r < q; ++r) inv[r] = invmod(r, q);
    W_.assign(static_cast<std::size_t>(q), 0.0);
    std::vector<double> wr(static_cast<std::size_t>(q), 0.0), wi(static_cast<std::size_t>(q), 0.0);
    for (i64 m = 1; m <= K_; ++m) {
        const cplx am = alpha[m];
        if (am == 0.0) continue;
        const i64 mr = m % q;
        const i64 nmax = K_ / m;
        i64 nr = 0;
        for (i64 n = 1; n <= nmax; ++n) {
            if (++nr == q) nr = 0;
            const cplx bn = beta[n];
            if (bn.real() == 0.0 && bn.imag() == 0.0) continue;
            const double v = vk[m * n];
            const i64 r = mr * inv[nr] % q;
            const double br = bn.real() * v, bi = bn.imag() * v;
            wr[r] += am.real() * br - am.imag() * bi;
            wi[r] += am.real() * bi + am.imag() * br;
        }
    }
    for (i64 r = 0; r < q; ++r) W_[r] = cplx(wr[r], wi[r]);
    eps_ = rootNumber(Q_);
}

cplx AfeEngine::firstSum(const DirichletCharacter& chi) const {
    if (chi.modulus() != Q_.q) throw UsageError("AFE: character must have modulus q");
    std::vector<cplx> terms(static_cast<std::size_t>(Q_.q));
    for (i64 r = 0; r < Q_.q; ++r) terms[r] = chi(r) * W_[r];
    return pairwiseSum(terms);
}

cplx AfeEngine::dualFactor(const DirichletCharacter& chi) const {
    const auto& D = Q_.D;
    const double ratio = static_cast<double>(D[0] * D[1]) / static_cast<double>(D[2] * D[3]);
    return std::polar(1.0, -Q_.t * std::log(ratio)) * eps_ * chi(D[0] * D[1]) * std::conj(chi(D[2] * D[3]));
}

cplx AfeEngine::value(const DirichletCharacter& chi) const {
    if (!chi.isEven() || !chi.isPrimitive()) throw UsageError("AFE: character must be even and primitive");
    const cplx s = firstSum(chi);
    return s + dualFactor(chi) * std::conj(s);
}

cplx afeProductValue(const Quadruple& Q, const DirichletCharacter& chi, AfeOptions opt) {
    return AfeEngine(Q, opt).value(chi);
}

// ---------------------------------------------------------------- log bound

double logBoundLambda() {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f = std::exp(-mid) - mid - 0.5 * mid * mid;
        (f > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

LogBoundGap grhLogBoundGap(const DirichletCharacter& chi, double t, double x) {
    if (chi.modulus() <= 1 || !chi.isPrimitive()) throw UsageError("grhLogBoundGap: need a primitive character mod m > 1");
    if (!(x >= 2.0)) throw UsageError("grhLogBoundGap: need x >= 2");
    const double lam = logBoundLambda();
    const double lx = std::log(x);
    const cplx expo(0.5 + lam / lx, t);
    std::vector<cplx> terms;
    for (i64 p : primesUpTo(static_cast<i64>(x))) {
        i64 pk = p;
        for (int k = 1; static_cast<double>(pk) <= x; ++k) {
            const double lpk = std::log(static_cast<double>(pk));
            terms.push_back(chi(pk) * std::exp(-expo * lpk) / static_cast<double>(k) * (std::log(x / pk) / lx));
            if (pk > static_cast<i64>(x) / p) break;
            pk *= p;
        }
    }
    const double m = static_cast<double>(chi.modulus());
    const double rhs = pairwiseSum(terms).real() + (1.0 + lam) / 2.0 * std::log(m * (1.0 + std::fabs(t))) / lx;
    const double logL = std::log(std::abs(lvalue(chi, cplx(0.5, t)).value));
    return {rhs, logL, rhs - logL};
}

}  // namespace fourl
