#include "fourl/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "fourl/errors.hpp"
#include "fourl/lfun.hpp"
#include "fourl/parallel.hpp"

namespace fourl {

namespace {

constexpr double kPi = std::numbers::pi;

cplx ephase(double x) { return std::polar(1.0, 2 * kPi * x); }

// e(num/den) with exact reduction of the numerator
cplx eFrac(i64 num, i64 den) { return std::polar(1.0, 2 * kPi * double(mod(num, den)) / double(den)); }

}  // namespace

void VoronoiConfig::validate() const {
    if (c < 1) throw UsageError("voronoi: c must be positive");
    if (gcd(a, c) != 1) throw UsageError("voronoi: need gcd(a, c) = 1");
    const i64 D1 = chi1.modulus(), D2 = chi2.modulus();
    if (gcd(D1, D2) != 1) throw UsageError("voronoi: moduli must be coprime");
    if (!isSquarefree(D1) || !isSquarefree(D2)) throw UsageError("voronoi: moduli must be squarefree");
    if (!chi1.isPrimitive() || !chi2.isPrimitive()) throw UsageError("voronoi: characters must be primitive");
    if (!g.isZero() && !(g.A() > 0 && g.B() > g.A())) throw UsageError("voronoi: need 0 < A < B for the bump");
}

DirichletCharacter primitiveCharacter(i64 m, bool odd, int index) {
    if (m == 1) {
        if (odd) throw UsageError("no odd character mod 1");
        return DirichletCharacter();
    }
    int seen = 0;
    for (const auto& x : characterTable(m)) {
        if (!x.isPrimitive() || x.isEven() == odd) continue;
        if (seen++ == index) return x;
    }
    throw UsageError("no such primitive character mod " + std::to_string(m));
}

cplx lhsSum(const VoronoiConfig& cfg) {
    cfg.validate();
    if (cfg.g.isZero()) return 0.0;
    std::vector<cplx> terms;
    for (i64 n = std::max<i64>(1, static_cast<i64>(std::ceil(cfg.g.A()))); n <= static_cast<i64>(std::floor(cfg.g.B()));
         ++n)
        terms.push_back(convolve(cfg.chi1, cfg.chi2, n) * eFrac(cfg.a * n, cfg.c) * cfg.g(double(n)));
    return pairwiseSum(terms);
}

VoronoiSplit voronoiSplit(const VoronoiConfig& cfg) {
    VoronoiSplit s;
    const i64 D1 = cfg.chi1.modulus(), D2 = cfg.chi2.modulus();
    s.g1 = gcd(cfg.c, D1);
    s.g2 = gcd(cfg.c, D2);
    s.D1p = D1 / s.g1;
    s.D2p = D2 / s.g2;
    std::tie(s.chi1p, s.chi1pp) = crtFactor(cfg.chi1, s.D1p, s.g1);
    std::tie(s.chi2p, s.chi2pp) = crtFactor(cfg.chi2, s.D2p, s.g2);
    return s;
}

cplx voronoiPrefactor(const VoronoiConfig& cfg) {
    const VoronoiSplit s = voronoiSplit(cfg);
    const i64 c = cfg.c, a = cfg.a;
    const cplx v = epsilon(s.chi1p) * epsilon(s.chi2p) * s.chi1p(c) * s.chi2p(c) *
                   s.chi1pp(mod(-invmod(mod(a * s.D2p, s.g1), s.g1), s.g1)) *
                   s.chi2pp(mod(-invmod(mod(a * s.D1p, s.g2), s.g2), s.g2));
    return v / (double(c) * std::sqrt(double(s.D1p * s.D2p)));
}

cplx voronoiPrefactorDirect(const VoronoiConfig& cfg) {
    cfg.validate();
    const i64 D1 = cfg.chi1.modulus(), D2 = cfg.chi2.modulus(), c = cfg.c, a = cfg.a;
    const i64 g1 = gcd(c, D1), g2 = gcd(c, D2), D1p = D1 / g1, D2p = D2 / g2;
    // chi' (n) = chi(N) with N = n mod D', N = 1 mod g; chi'' likewise with the roles swapped
    auto lift = [](const DirichletCharacter& chi, i64 n, i64 keep, i64 one) {
        if (gcd(mod(n, keep), keep) != 1 && keep > 1) return cplx(0.0);
        for (i64 N = 0; N < keep * one; ++N)
            if (mod(N - n, keep) == 0 && mod(N - 1, one) == 0) return chi(N);
        return cplx(0.0);
    };
    auto gauss = [&](const DirichletCharacter& chi, i64 keep, i64 one) {
        cplx s = 0.0;
        for (i64 x = 0; x < keep; ++x) s += lift(chi, x, keep, one) * ephase(double(x) / double(keep));
        return s / std::sqrt(double(keep));
    };
    const i64 r1 = g1 > 1 ? mod(-invmod(mod(a * D2p, g1), g1), g1) : 0;
    const i64 r2 = g2 > 1 ? mod(-invmod(mod(a * D1p, g2), g2), g2) : 0;
    const cplx v = gauss(cfg.chi1, D1p, g1) * gauss(cfg.chi2, D2p, g2) * lift(cfg.chi1, c, D1p, g1) *
                   lift(cfg.chi2, c, D2p, g2) * lift(cfg.chi1, r1, g1, D1p) * lift(cfg.chi2, r2, g2, D2p);
    return v / (double(c) * std::sqrt(double(D1p * D2p)));
}

namespace {

// sum_k i^k a_k z^{-k} with a_k = prod_{j<=k} (-(2j-1)^2) / (k! 8^k); H0(z) ~ sqrt(2/(pi z)) e^{i(z - pi/4)} S(z).
cplx hankelSeries(double z) {
    cplx s = 1.0, ik = 1.0;
    double a = 1.0;
    for (int k = 1; k <= 16; ++k) {
        const double next = a * -double((2 * k - 1) * (2 * k - 1)) / (k * 8.0 * z);
        if (std::abs(next) > std::abs(a)) break;
        a = next;
        ik *= cplx(0, 1);
        s += ik * a;
        if (std::abs(a) < 1e-17) break;
    }
    return s;
}

// Nodes in y = sqrt(x): int g(x) f(alpha sqrt x) dx = sum_j w_j f(alpha y_j).
struct Nodes {
    std::vector<double> y, w;
};

Nodes makeNodes(const BumpFunction& g, double alphaMax, double refine) {
    using GL = boost::math::quadrature::gauss<double, 30>;
    const double y0 = std::sqrt(g.A()), y1 = std::sqrt(g.B());
    const double h = std::min((y1 - y0) / 32, 20.0 / std::max(alphaMax, 1.0)) / refine;
    const int panels = static_cast<int>(std::ceil((y1 - y0) / h));
    const double hh = (y1 - y0) / panels;
    const auto& ab = GL::abscissa();
    const auto& wt = GL::weights();
    Nodes nd;
    for (int p = 0; p < panels; ++p) {
        const double mid = y0 + (p + 0.5) * hh, half = hh / 2;
        for (std::size_t i = 0; i < ab.size(); ++i)
            for (int sgn : {-1, 1}) {
                if (ab[i] == 0 && sgn == 1) continue;
                const double y = mid + sgn * half * ab[i];
                const double gv = g(y * y);
                if (gv == 0) continue;
                nd.y.push_back(y);
                nd.w.push_back(2 * y * gv * half * wt[i]);
            }
    }
    return nd;
}

struct Kernels {
    double Y = 0, J = 0, K = 0;
};

// Direct quadrature with the library Bessel functions.
Kernels directKernels(const Nodes& nd, double alpha) {
    std::vector<double> ys(nd.y.size()), js(nd.y.size()), ks(nd.y.size());
    for (std::size_t i = 0; i < nd.y.size(); ++i) {
        const double z = alpha * nd.y[i];
        ys[i] = nd.w[i] * besselY0(z);
        js[i] = nd.w[i] * besselJ0(z);
        ks[i] = z < 700 ? nd.w[i] * besselK0(z) : 0.0;
    }
    return {pairwiseSum(ys), pairwiseSum(js), pairwiseSum(ks)};
}

// int g(x) H0(alpha sqrt x) dx from the Hankel expansion node by node.
cplx hankelIntegral(const Nodes& nd, double alpha, double yc) {
    std::vector<cplx> t(nd.y.size());
    for (std::size_t i = 0; i < nd.y.size(); ++i)
        t[i] = nd.w[i] / std::sqrt(nd.y[i]) * std::polar(1.0, alpha * (nd.y[i] - yc)) * hankelSeries(alpha * nd.y[i]);
    return pairwiseSum(t);
}

// G(alpha) = e^{-i alpha yc} sqrt(pi alpha/2) e^{i pi/4} int g H0 is of exponential type (y1 - y0)/2,
// so it is sampled on a 4x oversampled grid and interpolated locally.
class HankelGrid {
public:
    HankelGrid() = default;
    HankelGrid(const Nodes& nd, double yc, double halfWidth, double alphaLo, double alphaHi, int workers)
        : yc_(yc), h_(kPi / (4 * halfWidth)) {
        a0_ = alphaLo - (kHalf + 1) * h_;
        const auto n = static_cast<std::size_t>(std::ceil((alphaHi - a0_) / h_)) + kHalf + 2;
        G_ = parallelMap<cplx>(n, [&](std::size_t i) { return hankelIntegral(nd, a0_ + double(i) * h_, yc_); }, workers);
        for (int j = 0; j < 2 * kHalf; ++j) {
            double b = 1;  // binomial(2 kHalf - 1, j)
            for (int m = 1; m <= j; ++m) b = b * (2 * kHalf - m) / m;
            bw_[j] = (j % 2 ? -b : b);
        }
    }
    // int g(x) H0^{(1)}(alpha sqrt x) dx
    cplx operator()(double alpha) const {
        const double u = (alpha - a0_) / h_;
        const auto i0 = static_cast<std::ptrdiff_t>(std::floor(u)) - kHalf + 1;
        if (i0 < 0 || i0 + 2 * kHalf > static_cast<std::ptrdiff_t>(G_.size())) throw MathError("HankelGrid: alpha outside grid");
        cplx num = 0.0;
        double den = 0.0;
        for (int j = 0; j < 2 * kHalf; ++j) {
            const double d = u - double(i0 + j);
            if (d == 0) {
                num = G_[static_cast<std::size_t>(i0 + j)];
                den = 1;
                break;
            }
            const double c = bw_[j] / d;
            num += c * G_[static_cast<std::size_t>(i0 + j)];
            den += c;
        }
        return std::sqrt(2 / (kPi * alpha)) * std::polar(1.0, alpha * yc_ - kPi / 4) * (num / den);
    }

private:
    static constexpr int kHalf = 12;
    double yc_ = 0, h_ = 1, a0_ = 0;
    std::vector<cplx> G_;
    std::array<double, 2 * kHalf> bw_{};
};

// int_N^oo C exp(-kappa n^{1/4}) dn
double envelopeTail(double C, double kappa, double N) {
    const double u = std::pow(N, 0.25);
    return 4 * C * std::exp(-kappa * u) *
           (u * u * u / kappa + 3 * u * u / (kappa * kappa) + 6 * u / std::pow(kappa, 3) + 6 / std::pow(kappa, 4));
}

}  // namespace

RhsValue rhsValue(const VoronoiConfig& cfg) {
    cfg.validate();
    const i64 D1 = cfg.chi1.modulus(), D2 = cfg.chi2.modulus(), c = cfg.c, a = cfg.a;
    if (D1 == 1 && D2 == 1) throw UsageError("voronoi: D1 = D2 = 1 puts L(1, principal) in the main terms");
    RhsValue out;
    if (cfg.g.isZero()) return out;
    const double ig = cfg.g.integral();
    if (c % D1 == 0) {
        const cplx L = lvalueAt1(multiply(cfg.chi1.conj(), cfg.chi2));
        const cplx x2 = cfg.chi2(mulmod(mod(c, D2), invmod(mod(D1, D2), D2), D2));
        out.mainTerms[0] = std::sqrt(double(D1)) * epsilon(cfg.chi1) * std::conj(cfg.chi1(a)) * x2 / double(c) * L * ig;
    }
    if (c % D2 == 0) {
        const cplx L = lvalueAt1(multiply(cfg.chi1, cfg.chi2.conj()));
        const cplx x1 = cfg.chi1(mulmod(mod(c, D1), invmod(mod(D2, D1), D1), D1));
        out.mainTerms[1] = std::sqrt(double(D2)) * epsilon(cfg.chi2) * x1 * std::conj(cfg.chi2(a)) / double(c) * L * ig;
    }

    const VoronoiSplit s = voronoiSplit(cfg);
    const cplx pref = voronoiPrefactor(cfg);
    const double par = (cfg.chi1(-1) * cfg.chi2(-1)).real();
    const DirichletCharacter bb1 = multiply(s.chi1p.conj(), s.chi2pp);
    const DirichletCharacter bb2 = multiply(s.chi1pp, s.chi2p.conj());
    const cplx k0w = 2.0 * (bb1(-1) + bb2(-1));
    const i64 abar = invmod(mod(a * s.D1p * s.D2p, c), c);
    const double scale = 4 * kPi / (double(c) * std::sqrt(double(s.D1p * s.D2p)));
    const double y0 = std::sqrt(cfg.g.A()), y1 = std::sqrt(cfg.g.B());
    // below this the Bessel functions are taken directly and K0 is kept
    const double alphaSwitch = std::max(40.0, 60.0 / y0);

    const i64 fixed = cfg.dualCutoff;
    const i64 cap = fixed > 0 ? fixed : cfg.maxDualCutoff;
    std::vector<cplx> b;  // b[n] = (bb1 * bb2)(n)
    auto fillB = [&](i64 upto) {
        b.assign(static_cast<std::size_t>(upto + 1), 0.0);
        const auto t1 = bb1.table(), t2 = bb2.table();
        const i64 m1 = bb1.modulus(), m2 = bb2.modulus();
        for (i64 d = 1; d <= upto; ++d) {
            const cplx u = t1[static_cast<std::size_t>(d % m1)];
            if (u == 0.0) continue;
            for (i64 e = 1; d * e <= upto; ++e) b[static_cast<std::size_t>(d * e)] += u * t2[static_cast<std::size_t>(e % m2)];
        }
    };

    Nodes nodes, finer;
    HankelGrid grid;
    bool haveGrid = false;
    i64 builtFor = 0;
    std::vector<cplx> termsY, termsJ, termsK;
    struct BlockMax {
        double n, m;
    };
    std::vector<BlockMax> maxima;
    double quadErr = 0, tail = kInf, kappa = 0;
    i64 n0 = 1;
    const i64 block = 2048;
    while (n0 <= cap) {
        const i64 n1 = std::min(cap, n0 + block - 1);
        if (n1 > builtFor) {
            builtFor = std::min(cap, std::max<i64>(16384, n1 * 4));
            const double alphaMax = scale * std::sqrt(double(builtFor));
            nodes = makeNodes(cfg.g, alphaMax, 1.0);
            finer = makeNodes(cfg.g, alphaMax, 2.0);
            haveGrid = alphaMax > alphaSwitch;
            if (haveGrid) grid = HankelGrid(nodes, 0.5 * (y0 + y1), 0.5 * (y1 - y0), alphaSwitch, alphaMax, 0);
            fillB(builtFor);
        }
        struct Term {
            cplx y, j, k;
        };
        auto kernels = [&](double alpha) {
            if (alpha < alphaSwitch) return directKernels(nodes, alpha);
            const cplx h = grid(alpha);
            return Kernels{h.imag(), h.real(), 0.0};
        };
        const auto terms = parallelMap<Term>(static_cast<std::size_t>(n1 - n0 + 1), [&](std::size_t i) {
            const i64 n = n0 + static_cast<i64>(i);
            Term t{};
            const cplx bn = b[static_cast<std::size_t>(n)];
            if (bn == 0.0) return t;
            const Kernels k = kernels(scale * std::sqrt(double(n)));
            const cplx em = eFrac(-abar * n, c), ep = eFrac(abar * n, c);
            t.y = -(1 + par) * kPi * bn * em * k.Y;
            t.j = -(1 - par) * cplx(0, kPi) * bn * em * k.J;
            t.k = k0w * bn * ep * k.K;
            return t;
        });
        double mx = 0, bm = 0;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const auto& t = terms[i];
            termsY.push_back(t.y);
            termsJ.push_back(t.j);
            termsK.push_back(t.k);
            mx = std::max(mx, std::abs(pref * (t.y + t.j + t.k)));
            bm = std::max(bm, std::abs(b[static_cast<std::size_t>(n0) + i]));
        }
        // quadrature and interpolation check at the block end against doubled panels
        {
            const double al = scale * std::sqrt(double(n1));
            double d;
            if (al < alphaSwitch) {
                const Kernels k1 = directKernels(nodes, al), k2 = directKernels(finer, al);
                d = std::abs(k1.Y - k2.Y) + std::abs(k1.J - k2.J) + std::abs(k1.K - k2.K);
            } else {
                const cplx exact = std::sqrt(2 / (kPi * al)) * std::polar(1.0, -kPi / 4) *
                                   hankelIntegral(finer, al, 0.0);
                d = 2 * std::abs(grid(al) - exact);
            }
            quadErr += double(n1 - n0 + 1) * std::abs(pref) * 2 * kPi * bm * d;
        }
        if (mx > 0) maxima.push_back({0.5 * double(n0 + n1), mx});
        n0 = n1 + 1;
        // fit log m = log C - kappa n^{1/4} on the latest blocks
        const std::size_t use = std::min<std::size_t>(maxima.size(), 8);
        if (use >= 3) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (std::size_t i = maxima.size() - use; i < maxima.size(); ++i) {
                const double x = std::pow(maxima[i].n, 0.25), y = std::log(maxima[i].m);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            const double slope = (double(use) * sxy - sx * sy) / (double(use) * sxx - sx * sx);
            const double icpt = (sy - slope * sx) / double(use);
            if (slope < 0) {
                kappa = -slope;
                // the envelope never sits below the last observed block maximum
                const double C =
                    std::max(std::exp(icpt), maxima.back().m * std::exp(kappa * std::pow(maxima.back().n, 0.25)));
                tail = envelopeTail(C, kappa, double(n0));
            } else {
                tail = kInf;
            }
        }
        if (fixed == 0 && tail < cfg.tolerance) break;
    }
    out.dualCutoff = n0 - 1;
    out.tailEstimate = tail;
    out.decayRate = kappa;
    out.quadError = quadErr;
    if (fixed == 0 && !(tail < cfg.tolerance))
        throw MathError("voronoi: dual tail estimate " + std::to_string(tail) + " above tolerance at cutoff " +
                        std::to_string(out.dualCutoff) + "; raise maxDualCutoff");
    const cplx T = pairwiseSum(termsY) + pairwiseSum(termsJ) + pairwiseSum(termsK);
    out.dual = pref * T;
    out.branches = {pref * pairwiseSum(termsY), pref * pairwiseSum(termsJ), pref * pairwiseSum(termsK)};
    out.value = out.mainTerms[0] + out.mainTerms[1] + out.dual;
    return out;
}

VoronoiResult verifyVoronoi(const VoronoiConfig& cfg) {
    VoronoiResult r;
    r.lhs = lhsSum(cfg);
    r.rhs = rhsValue(cfg);
    r.residual = std::abs(r.lhs - r.rhs.value);
    r.budget = std::max(1e-6, 10 * (r.rhs.quadError + r.rhs.tailEstimate));
    r.pass = r.residual <= r.budget;
    return r;
}

std::vector<VoronoiGridEntry> voronoiGrid() {
    auto cfg = [](i64 a, i64 c, DirichletCharacter x1, DirichletCharacter x2, double A = 10, double B = 20) {
        VoronoiConfig v;
        v.a = a;
        v.c = c;
        v.chi1 = std::move(x1);
        v.chi2 = std::move(x2);
        v.g = BumpFunction(A, B);
        return v;
    };
    const auto triv = DirichletCharacter();
    const auto q3 = primitiveCharacter(3, true);
    const auto q5 = primitiveCharacter(5, false);
    const auto o5 = primitiveCharacter(5, true);
    const auto o7 = primitiveCharacter(7, true);
    const auto e7 = primitiveCharacter(7, false);
    return {
        {"a1c3D1,5", cfg(1, 3, triv, q5), true},
        {"a2c5D1,5", cfg(2, 5, triv, q5), true},
        {"a1c15D3,5", cfg(1, 15, q3, q5), true},
        {"a1c7D3,5wide", cfg(1, 7, q3, q5, 10, 40), false},
        {"a2c3D3,5", cfg(2, 3, q3, q5), false},
        {"a1c4D1,5wide", cfg(1, 4, triv, q5, 5, 25), false},
        {"a3c7D1,7odd", cfg(3, 7, triv, o7), false},
        {"a1c5D1,7even", cfg(1, 5, triv, e7), false},
        {"a1c6D3,5long", cfg(1, 6, q3, q5, 12, 30), false},
        {"a2c7D5,7", cfg(2, 7, o5, o7), false},
        {"a1c1D1,5", cfg(1, 1, triv, q5), false},
        {"a5c2D1,3short", cfg(5, 2, triv, q3, 8, 16), false},
    };
}

}  // namespace fourl
