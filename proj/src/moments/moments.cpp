#include "fourl/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fourl/errors.hpp"
#include "fourl/parallel.hpp"

namespace fourl {

std::vector<DirichletCharacter> enumerateEvenPrimitive(i64 q) {
    if (q <= 3 || !isPrime(q)) throw UsageError("enumerateEvenPrimitive: q must be a prime > 3");
    return evenPrimitiveCharacters(q);
}

i64 phiPlus(i64 q) {
    if (q <= 3 || !isPrime(q)) throw UsageError("phiPlus: q must be a prime > 3");
    return (q - 1) / 2 - 1;
}

OrthogonalityResult checkOrthogonality(i64 q) {
    const auto chars = enumerateEvenPrimitive(q);
    std::vector<std::vector<cplx>> tabs;
    for (const auto& c : chars) tabs.push_back(c.table());
    OrthogonalityResult r;
    r.q = q;
    r.exact = true;
    for (i64 m = 1; m < q; ++m)
        for (i64 n = 1; n < q; ++n) {
            std::vector<cplx> terms;
            for (const auto& t : tabs) terms.push_back(t[m] * std::conj(t[n]));
            const cplx s = pairwiseSum(terms);
            const double pred = ((m == n || m == q - n) ? (q - 1) / 2.0 : 0.0) - 1.0;
            const double err = std::abs(s - pred);
            r.maxError = std::max(r.maxError, err);
            if (std::round(s.real()) != pred || std::abs(s.imag()) > 0.25 || std::abs(s.real() - pred) > 0.25)
                r.exact = false;
        }
    return r;
}

std::string momentMethodName(MomentMethod m) { return m == MomentMethod::Afe ? "afe" : "hurwitz"; }

BruteForceResult bruteForceMoment(const Quadruple& Q, const BruteForceOptions& opt) {
    Q.validate();
    if (Q.q > 2000) throw UsageError("bruteForceMoment: q above the 2000 budget");
    const auto chars = enumerateEvenPrimitive(Q.q);
    BruteForceResult res;
    res.method = opt.method;
    res.characterCount = static_cast<int>(chars.size());
    std::vector<cplx> vals;
    if (opt.method == MomentMethod::Afe) {
        AfeOptions ao;
        ao.tolerance = opt.afeTolerance;
        ao.maxCutoff = opt.maxCutoff;
        const AfeEngine engine(Q, ao);
        res.cutoff = engine.cutoff();
        res.tolerance = opt.afeTolerance;
        vals = parallelMap<cplx>(
            chars.size(),
            [&](std::size_t i) {
                try {
                    return engine.value(chars[i]);
                } catch (const MathError& e) {
                    throw MathError("AFE failed for character " + chars[i].id() + ": " + e.what());
                }
            },
            opt.workers);
    } else {
        vals = directProductValues(Q, chars);
        res.tolerance = 1e-12;
    }
    for (std::size_t i = 0; i < chars.size(); ++i) vals[i] *= chars[i](Q.ell[0]) * std::conj(chars[i](Q.ell[1]));
    res.value = pairwiseSum(vals) / static_cast<double>(chars.size());
    return res;
}

OrthogonalitySplit orthogonalitySplit(const Quadruple& Q, double afeTolerance) {
    Q.validate();
    const auto chars = enumerateEvenPrimitive(Q.q);
    AfeOptions ao;
    ao.tolerance = afeTolerance;
    const AfeEngine engine(Q, ao);
    const auto& W = engine.buckets();
    const i64 q = Q.q;
    std::vector<cplx> avg;
    for (const auto& c : chars) avg.push_back(engine.firstSum(c) * c(Q.ell[0]) * std::conj(c(Q.ell[1])));
    OrthogonalitySplit out;
    out.characterAverage = pairwiseSum(avg) / static_cast<double>(chars.size());
    // chi(r l1) conj chi(l2) summed over chars: (phi/2) 1_{r l1 = +- l2} - 1 on units
    const i64 l1 = mod(Q.ell[0], q), l2 = mod(Q.ell[1], q);
    std::vector<cplx> terms;
    for (i64 r = 1; r < q; ++r) {
        const i64 a = mulmod(r, l1, q);
        const double w = ((a == l2 || a == q - l2) ? (q - 1) / 2.0 : 0.0) - 1.0;
        terms.push_back(W[r] * w);
    }
    out.congruenceForm = pairwiseSum(terms) / static_cast<double>(chars.size());
    return out;
}

cplx lOneCross(const DirichletCharacter& a, const DirichletCharacter& b) {
    const DirichletCharacter c = multiply(a, b.conj());
    if (c.isPrincipal()) throw ConfluentCharacters("L(1, " + a.id() + " * conj " + b.id() + ") is a pole");
    return lvalueAt1(c);
}

cplx mainTermM(const CharArray& x, i64 l1, i64 l2, double t) {
    if (l1 < 1 || l2 < 1) throw UsageError("mainTermM: twists must be positive");
    const i64 g = gcd(l1, l2);
    const i64 a = l1 / g, b = l2 / g;
    const cplx Ls = lOneCross(x[0], x[2]) * lOneCross(x[0], x[3]) * lOneCross(x[1], x[2]) * lOneCross(x[1], x[3]);
    const cplx pre = std::exp(-cplx(0.5, -t) * std::log(static_cast<double>(a)) -
                              cplx(0.5, t) * std::log(static_cast<double>(b)));
    return productA(x, a, b).value * pre * Ls;
}

const std::array<std::string, 6>& SixTerms::labels() {
    static const std::array<std::string, 6> l = {"diagonal", "(3,4|1,2)", "(1<->3)", "(1<->4)", "(2<->3)", "(2<->4)"};
    return l;
}

namespace {

cplx dpow(double x, double t) { return std::polar(1.0, -t * std::log(x)); }  // x^{-it}

}  // namespace

SixTerms sixTermPrediction(const Quadruple& Q) {
    Q.validate();
    const auto& c = Q.chi;
    const auto& D = Q.D;
    const double t = Q.t;
    const i64 q = Q.q;
    const auto& L = Q.ell;
    auto eps = [](const DirichletCharacter& x) { return epsilon(x); };
    auto pair = [&](int i, int j) {
        return c[i](q) * std::conj(c[j](q)) * eps(c[i]) * eps(c[j].conj()) * dpow(double(D[i]) / double(D[j]), t);
    };
    SixTerms s;
    auto term = [&](int k, auto fn) {
        try {
            s.terms[k] = fn();
        } catch (const ConfluentCharacters& e) {
            throw ConfluentCharacters("term " + SixTerms::labels()[k] + ": " + e.what());
        }
    };
    term(0, [&] { return mainTermM(c, L[0], L[1], t); });
    term(1, [&] {
        return dpow(double(D[0] * D[1]) / double(D[2] * D[3]), t) * rootNumber(Q) *
               mainTermM({c[2], c[3], c[0], c[1]}, D[0] * D[1] * L[0], D[2] * D[3] * L[1], t);
    });
    term(2, [&] { return pair(0, 2) * mainTermM({c[2], c[1], c[0], c[3]}, D[0] * L[0], D[2] * L[1], t); });
    term(3, [&] { return pair(0, 3) * mainTermM({c[3], c[1], c[2], c[0]}, D[0] * L[0], D[3] * L[1], t); });
    term(4, [&] { return pair(1, 2) * mainTermM({c[0], c[2], c[1], c[3]}, D[1] * L[0], D[2] * L[1], t); });
    term(5, [&] { return pair(1, 3) * mainTermM({c[0], c[3], c[2], c[1]}, D[1] * L[0], D[3] * L[1], t); });
    s.sum = 0.0;
    for (const cplx& v : s.terms) s.sum += v;
    return s;
}

MomentReport momentReport(const Quadruple& Q, const BruteForceOptions& opt) {
    MomentReport r;
    r.quadruple = Q;
    const SixTerms st = sixTermPrediction(Q);
    const BruteForceResult bf = bruteForceMoment(Q, opt);
    r.bruteForce = bf.value;
    r.diagonalTerm = st.terms[0];
    for (int k = 0; k < 5; ++k) r.swapTerms[k] = st.terms[k + 1];
    r.prediction = st.sum;
    r.residual = bf.value - st.sum;
    r.afeTolerance = bf.tolerance;
    r.characterCount = bf.characterCount;
    r.method = momentMethodName(bf.method);
    return r;
}

cplx rFactor(const DirichletCharacter& a, const DirichletCharacter& b, const DirichletCharacter& c,
             const DirichletCharacter& d) {
    const cplx l1 = lOneCross(a, c) * lOneCross(a, d) * lOneCross(b, c) * lOneCross(b, d);
    const DirichletCharacter psi = multiply(multiply(a, b), multiply(c.conj(), d.conj()));
    return l1 / lvalue(psi, 2.0).value;
}

// ---------------------------------------------------------------- matrix

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

template <class T>
struct Cx {
    T re{0}, im{0};
    Cx() = default;
    Cx(T r, T i) : re(r), im(i) {}
    Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
    Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
    Cx operator*(const Cx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Cx operator/(const Cx& o) const {
        const T d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    Cx conj() const { return {re, -im}; }
    T norm2() const { return re * re + im * im; }
};

// One factor of a matrix entry.
struct Factor {
    enum Kind { AtQ, Eps, AtD } kind;
    int j;        // character index 0..3
    bool conj;    // use conj chi_j
    int k = -1;   // for AtD: evaluate at D_k
};

struct EntrySpec {
    std::vector<Factor> f;
    std::vector<int> den;  // 1/sqrt(prod D)
};

template <class T>
class Evaluator {
public:
    Evaluator(const CharArray& chi, i64 qResidue) : chi_(chi), qr_(qResidue) {
        for (int j = 0; j < 4; ++j) {
            Cx<T> tau;
            const i64 m = chi[j].modulus();
            for (i64 a = 0; a < m; ++a) {
                auto ang = chi[j].angle(a);
                if (!ang) continue;
                tau = tau + root(addAngles(*ang, Angle{a, m}));
            }
            const T sq = sqrt(T(m));
            eps_[j] = {tau.re / sq, tau.im / sq};
            // conj chi: tau(conj chi) = chi(-1) conj tau(chi)
            epsBar_[j] = eps_[j].conj();
            if (!chi[j].isEven()) epsBar_[j] = {-epsBar_[j].re, -epsBar_[j].im};
        }
    }
    static Cx<T> root(Angle a) {
        if (a.den == 1 || a.num == 0) return {T(1), T(0)};
        const T th = 2 * boost::math::constants::pi<T>() * T(a.num) / T(a.den);
        using std::cos;
        using std::sin;
        return {cos(th), sin(th)};
    }
    Cx<T> value(int j, i64 n, bool conj) const {
        auto a = chi_[j].angle(n);
        if (!a) return {};
        const Cx<T> v = root(*a);
        return conj ? v.conj() : v;
    }
    Cx<T> entry(const EntrySpec& e) const {
        Cx<T> v{T(1), T(0)};
        for (const Factor& f : e.f) {
            switch (f.kind) {
                case Factor::AtQ: v = v * value(f.j, qr_, f.conj); break;
                case Factor::Eps: v = v * (f.conj ? epsBar_[f.j] : eps_[f.j]); break;
                case Factor::AtD: v = v * value(f.j, chi_[f.k].modulus(), f.conj); break;
            }
        }
        i64 d = 1;
        for (int k : e.den) d *= chi_[k].modulus();
        const T s = sqrt(T(d));
        return {v.re / s, v.im / s};
    }

private:
    const CharArray& chi_;
    i64 qr_;
    std::array<Cx<T>, 4> eps_, epsBar_;
};

// Shorthands for the literal table: q(j), e(j) and d(j, k) with a bar flag.
Factor Fq(int j, bool b = false) { return {Factor::AtQ, j - 1, b}; }
Factor Fe(int j, bool b = false) { return {Factor::Eps, j - 1, b}; }
Factor Fd(int j, int k, bool b = false) { return {Factor::AtD, j - 1, b, k - 1}; }
std::vector<int> Dn(std::initializer_list<int> ks) {
    std::vector<int> v;
    for (int k : ks) v.push_back(k - 1);
    return v;
}
// chi_a chi_b-bar type pair entry: q and eps factors for (i, bi), (j, bj)
EntrySpec pairEntry(int i, bool bi, int j, bool bj, Factor d1, Factor d2, std::vector<int> den) {
    return {{Fq(i, bi), Fq(j, bj), Fe(i, bi), Fe(j, bj), d1, d2}, std::move(den)};
}
EntrySpec quadEntry(std::array<std::pair<int, bool>, 4> cs, std::array<Factor, 4> ds) {
    EntrySpec e;
    for (auto [j, b] : cs) e.f.push_back(Fq(j, b));
    for (auto [j, b] : cs) e.f.push_back(Fe(j, b));
    for (const auto& d : ds) e.f.push_back(d);
    e.den = Dn({1, 2, 3, 4});
    return e;
}

constexpr bool B = true;  // bar
constexpr bool N = false;

// The displayed matrix, row by row; the diagonal is 1.
std::array<std::array<EntrySpec, 6>, 6> literalSpecs() {
    std::array<std::array<EntrySpec, 6>, 6> m;
    // row 1
    m[0][1] = quadEntry({{{1, N}, {2, N}, {3, B}, {4, B}}}, {Fd(1, 2, B), Fd(2, 1, B), Fd(3, 4), Fd(4, 3)});
    m[0][2] = pairEntry(1, N, 3, B, Fd(3, 2), Fd(4, 1, B), Dn({1, 3}));
    m[0][3] = pairEntry(2, N, 4, B, Fd(1, 4), Fd(3, 2, B), Dn({2, 4}));
    m[0][4] = pairEntry(1, N, 4, B, Fd(2, 4), Fd(3, 1, B), Dn({1, 4}));
    m[0][5] = pairEntry(2, N, 3, B, Fd(1, 3), Fd(4, 2, B), Dn({2, 3}));
    // row 2
    m[1][0] = quadEntry({{{1, B}, {2, B}, {3, N}, {4, N}}}, {Fd(1, 2), Fd(2, 1), Fd(3, 4, B), Fd(4, 3, B)});
    m[1][2] = pairEntry(2, B, 4, N, Fd(1, 4, B), Fd(3, 2), Dn({2, 4}));
    m[1][3] = pairEntry(1, B, 3, N, Fd(3, 2, B), Fd(4, 1), Dn({1, 3}));
    m[1][4] = pairEntry(2, B, 3, N, Fd(1, 3, B), Fd(4, 2), Dn({2, 3}));
    m[1][5] = pairEntry(1, B, 4, N, Fd(2, 4, B), Fd(3, 1), Dn({1, 4}));
    // row 3
    m[2][0] = pairEntry(3, N, 1, B, Fd(1, 2), Fd(4, 3, B), Dn({1, 3}));
    m[2][1] = pairEntry(2, N, 4, B, Fd(3, 4), Fd(1, 2, B), Dn({2, 4}));
    m[2][3] = quadEntry({{{3, N}, {2, N}, {1, B}, {4, B}}}, {Fd(3, 2, B), Fd(2, 3, B), Fd(1, 4), Fd(4, 1)});
    m[2][4] = pairEntry(3, N, 4, B, Fd(2, 4), Fd(1, 3, B), Dn({3, 4}));
    m[2][5] = pairEntry(2, N, 1, B, Fd(3, 1), Fd(4, 2, B), Dn({2, 1}));
    // row 4
    m[3][0] = pairEntry(2, B, 4, N, Fd(3, 4, B), Fd(1, 2), Dn({2, 4}));
    m[3][1] = pairEntry(3, B, 1, N, Fd(1, 2, B), Fd(4, 3), Dn({1, 3}));
    m[3][2] = quadEntry({{{3, B}, {2, B}, {1, N}, {4, N}}}, {Fd(3, 2), Fd(2, 3), Fd(1, 4, B), Fd(4, 1, B)});
    m[3][4] = pairEntry(2, B, 1, N, Fd(3, 1, B), Fd(4, 2), Dn({2, 1}));
    m[3][5] = pairEntry(3, B, 4, N, Fd(2, 4, B), Fd(1, 3), Dn({3, 4}));
    // row 5
    m[4][0] = pairEntry(4, N, 1, B, Fd(2, 1), Fd(3, 4, B), Dn({1, 4}));
    m[4][1] = pairEntry(2, N, 3, B, Fd(4, 3), Fd(1, 2, B), Dn({2, 3}));
    m[4][2] = pairEntry(4, N, 3, B, Fd(3, 2), Fd(1, 4, B), Dn({4, 3}));
    m[4][3] = pairEntry(2, N, 1, B, Fd(4, 1), Fd(3, 2, B), Dn({2, 4}));
    m[4][5] = quadEntry({{{4, N}, {2, N}, {3, B}, {1, B}}}, {Fd(4, 2, B), Fd(2, 4, B), Fd(3, 1), Fd(1, 3)});
    // row 6
    m[5][0] = pairEntry(2, B, 3, N, Fd(4, 3, B), Fd(1, 2), Dn({2, 3}));
    m[5][1] = pairEntry(4, B, 1, N, Fd(2, 1, B), Fd(3, 4), Dn({1, 4}));
    m[5][2] = pairEntry(2, B, 1, N, Fd(4, 1, B), Fd(3, 2), Dn({2, 4}));
    m[5][3] = pairEntry(4, B, 3, N, Fd(3, 2, B), Fd(1, 4), Dn({4, 3}));
    m[5][4] = quadEntry({{{4, B}, {2, B}, {3, N}, {1, N}}}, {Fd(4, 2), Fd(2, 4), Fd(3, 1, B), Fd(1, 3, B)});
    return m;
}

// Six-term untwisted coefficients for the quadruple whose role r is played by chi_{s[r]},
// each paired with the (first pair | second pair) signature of its R-value.
struct TermSpec {
    EntrySpec e;
    std::array<int, 2> top, bottom;
};

std::array<TermSpec, 6> untwistedSpecs(std::array<int, 4> s) {
    auto q = [&](int r, bool b) { return Factor{Factor::AtQ, s[r], b}; };
    auto e = [&](int r, bool b) { return Factor{Factor::Eps, s[r], b}; };
    auto d = [&](int r, int k, bool b) { return Factor{Factor::AtD, s[r], b, s[k]}; };
    auto pr = [&](int i, int j, int a, int k1, int b2, int k2) {
        // chi_i conj chi_j (q) eps(chi_i) eps(conj chi_j) chi_a(D_k1) conj chi_b(D_k2) / sqrt(D_i D_j)
        return EntrySpec{{q(i, N), q(j, B), e(i, N), e(j, B), d(a, k1, N), d(b2, k2, B)}, {s[i], s[j]}};
    };
    std::array<TermSpec, 6> t;
    t[0] = {EntrySpec{}, {s[0], s[1]}, {s[2], s[3]}};
    t[1] = {EntrySpec{{q(0, N), q(1, N), q(2, B), q(3, B), e(0, N), e(1, N), e(2, B), e(3, B), d(0, 1, B),
                       d(1, 0, B), d(2, 3, N), d(3, 2, N)},
                      {s[0], s[1], s[2], s[3]}},
            {s[2], s[3]},
            {s[0], s[1]}};
    t[2] = {pr(0, 2, 1, 2, 3, 0), {s[2], s[1]}, {s[0], s[3]}};
    t[3] = {pr(0, 3, 1, 3, 2, 0), {s[3], s[1]}, {s[2], s[0]}};
    t[4] = {pr(1, 2, 0, 2, 3, 1), {s[0], s[2]}, {s[1], s[3]}};
    t[5] = {pr(1, 3, 0, 3, 2, 1), {s[0], s[3]}, {s[2], s[1]}};
    return t;
}

const std::array<std::array<int, 4>, 6> kRowPerms = {
    {{0, 1, 2, 3}, {2, 3, 0, 1}, {2, 1, 0, 3}, {0, 3, 2, 1}, {3, 1, 2, 0}, {0, 2, 1, 3}}};

// Column signatures: R(1,2,3~,4~), conj, R(3,2,1~,4~), conj, R(4,2,3~,1~), conj.
const std::array<std::array<std::array<int, 2>, 2>, 6> kColumns = {{{{{0, 1}, {2, 3}}},
                                                                    {{{2, 3}, {0, 1}}},
                                                                    {{{2, 1}, {0, 3}}},
                                                                    {{{0, 3}, {2, 1}}},
                                                                    {{{3, 1}, {2, 0}}},
                                                                    {{{0, 2}, {1, 3}}}}};

int columnOf(std::array<int, 2> top, std::array<int, 2> bottom) {
    auto same = [](std::array<int, 2> a, std::array<int, 2> b) {
        return (a[0] == b[0] && a[1] == b[1]) || (a[0] == b[1] && a[1] == b[0]);
    };
    for (int c = 0; c < 6; ++c)
        if (same(kColumns[c][0], top) && same(kColumns[c][1], bottom)) return c;
    throw MathError("R signature matches no column");
}

std::array<std::array<EntrySpec, 6>, 6> derivedSpecs() {
    std::array<std::array<EntrySpec, 6>, 6> m;
    for (int r = 0; r < 6; ++r) {
        std::array<bool, 6> used{};
        for (const TermSpec& ts : untwistedSpecs(kRowPerms[r])) {
            const int c = columnOf(ts.top, ts.bottom);
            if (used[c]) throw MathError("two terms share a column");
            used[c] = true;
            m[r][c] = ts.e;
        }
    }
    return m;
}

const std::array<std::array<EntrySpec, 6>, 6>& specsFor(MatrixForm form) {
    static const auto lit = literalSpecs();
    static const auto der = derivedSpecs();
    return form == MatrixForm::Literal ? lit : der;
}

template <class T>
std::array<std::array<Cx<T>, 6>, 6> buildMatrix(const CharArray& chi, i64 qResidue, MatrixForm form) {
    const Evaluator<T> ev(chi, qResidue);
    const auto& sp = specsFor(form);
    std::array<std::array<Cx<T>, 6>, 6> m;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) m[r][c] = (r == c) ? Cx<T>{T(1), T(0)} : ev.entry(sp[r][c]);
    return m;
}

template <class T>
Cx<T> det(std::array<std::array<Cx<T>, 6>, 6> a) {
    Cx<T> d{T(1), T(0)};
    for (int c = 0; c < 6; ++c) {
        int piv = c;
        for (int r = c + 1; r < 6; ++r)
            if (a[r][c].norm2() > a[piv][c].norm2()) piv = r;
        if (a[piv][c].norm2() == T(0)) return {};
        if (piv != c) {
            std::swap(a[piv], a[c]);
            d = Cx<T>{T(0), T(0)} - d;
        }
        d = d * a[c][c];
        for (int r = c + 1; r < 6; ++r) {
            const Cx<T> f = a[r][c] / a[c][c];
            for (int k = c; k < 6; ++k) a[r][k] = a[r][k] - f * a[c][k];
        }
    }
    return d;
}

void checkMatrixArgs(const CharArray& chi, i64 qResidue) {
    i64 P = 1;
    for (const auto& c : chi) P *= c.modulus();
    if (gcd(qResidue, P) != 1) throw UsageError("sixfoldMatrix: qResidue must be a unit mod D1 D2 D3 D4");
}

}  // namespace

std::array<cplx, 6> untwistedCoefficients(const CharArray& chi, i64 qResidue) {
    const Evaluator<double> ev(chi, qResidue);
    std::array<cplx, 6> out;
    const auto ts = untwistedSpecs({0, 1, 2, 3});
    for (int k = 0; k < 6; ++k) {
        const auto v = ev.entry(ts[k].e);
        out[k] = {v.re, v.im};
    }
    return out;
}

cplx untwistedPrediction(const Quadruple& Q) {
    Q.validate();
    const auto& c = Q.chi;
    const auto co = untwistedCoefficients(c, Q.q);
    const std::array<cplx, 6> R = {rFactor(c[0], c[1], c[2], c[3]), rFactor(c[2], c[3], c[0], c[1]),
                                   rFactor(c[2], c[1], c[0], c[3]), rFactor(c[3], c[1], c[2], c[0]),
                                   rFactor(c[0], c[2], c[1], c[3]), rFactor(c[0], c[3], c[2], c[1])};
    cplx s = 0.0;
    for (int k = 0; k < 6; ++k) s += co[k] * R[k];
    return s;
}

Matrix6 sixfoldMatrix(const CharArray& chi, i64 qResidue, MatrixForm form) {
    checkMatrixArgs(chi, qResidue);
    const auto m = buildMatrix<double>(chi, qResidue, form);
    Matrix6 out;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) out[r][c] = {m[r][c].re, m[r][c].im};
    return out;
}

cplx determinant6(const Matrix6& m) {
    std::array<std::array<Cx<double>, 6>, 6> a;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) a[r][c] = {m[r][c].real(), m[r][c].imag()};
    const auto d = det(a);
    return {d.re, d.im};
}

double determinantModulusQuad(const CharArray& chi, i64 qResidue, MatrixForm form) {
    checkMatrixArgs(chi, qResidue);
    const auto d = det(buildMatrix<Quad>(chi, qResidue, form));
    return static_cast<double>(sqrt(d.norm2()));
}

std::vector<std::array<i64, 4>> detScanList() {
    std::vector<std::array<i64, 4>> out;
    for (i64 d4 : {7, 11, 13, 17, 19, 23, 29, 31, 37}) out.push_back({1, 3, 5, d4});
    for (i64 d4 : {11, 13, 17, 19}) out.push_back({1, 3, 7, d4});
    out.push_back({1, 5, 7, 11});
    return out;
}

std::vector<DetScanRecord> detScan(const std::vector<std::array<i64, 4>>& tuples, int workers) {
    struct Job {
        std::array<i64, 4> D;
        CharArray chi;
        i64 qr;
        bool vacuous;
    };
    std::vector<Job> jobs;
    for (const auto& D : tuples) {
        std::array<std::vector<DirichletCharacter>, 4> lists;
        bool vacuous = false;
        for (int j = 0; j < 4; ++j) {
            lists[j] = evenPrimitiveCharacters(D[j]);
            if (lists[j].empty()) vacuous = true;
        }
        if (vacuous) {
            jobs.push_back({D, {}, 0, true});
            continue;
        }
        const i64 P = D[0] * D[1] * D[2] * D[3];
        for (const auto& a : lists[0])
            for (const auto& b : lists[1])
                for (const auto& c : lists[2])
                    for (const auto& d : lists[3])
                        for (i64 r = 1; r < std::max<i64>(P, 2); ++r)
                            if (gcd(r, P) == 1) jobs.push_back({D, {a, b, c, d}, r, false});
    }
    return parallelMap<DetScanRecord>(
        jobs.size(),
        [&](std::size_t i) {
            const Job& j = jobs[i];
            DetScanRecord rec;
            rec.D = j.D;
            rec.vacuous = j.vacuous;
            if (j.vacuous) return rec;
            for (int k = 0; k < 4; ++k) rec.ids[k] = j.chi[k].id();
            rec.qResidue = j.qr;
            const Matrix6 L = sixfoldMatrix(j.chi, j.qr, MatrixForm::Literal);
            const Matrix6 Dm = sixfoldMatrix(j.chi, j.qr, MatrixForm::Derived);
            rec.detModulus = std::abs(determinant6(L));
            rec.derivedDetModulus = std::abs(determinant6(Dm));
            for (int r = 0; r < 6; ++r)
                for (int c = 0; c < 6; ++c) rec.entryMismatch = std::max(rec.entryMismatch, std::abs(L[r][c] - Dm[r][c]));
            if (rec.detModulus < 1e-6 || rec.derivedDetModulus < 1e-6) {
                rec.escalated = true;
                rec.detModulus = determinantModulusQuad(j.chi, j.qr, MatrixForm::Literal);
                rec.derivedDetModulus = determinantModulusQuad(j.chi, j.qr, MatrixForm::Derived);
            }
            return rec;
        },
        workers);
}

}  // namespace fourl
