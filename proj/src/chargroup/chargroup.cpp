#include "fourl/chargroup.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "fourl/errors.hpp"
#include "fourl/parallel.hpp"

namespace fourl {

namespace {

Angle normalize(i64 num, i64 den) {
    i64 g = gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Angle{mod(num, den), den};
}

i64 primitiveRootModP(i64 p) {
    if (p == 2) return 1;
    auto fs = primeDivisors(p - 1);
    for (i64 g = 2;; ++g) {
        bool ok = true;
        for (i64 r : fs)
            if (powmod(g, (p - 1) / r, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
}

}  // namespace

Angle addAngles(Angle a, Angle b) {
    i64 g = gcd(a.den, b.den);
    i64 den = a.den / g * b.den;
    __int128 num = static_cast<__int128>(a.num) * (den / a.den) + static_cast<__int128>(b.num) * (den / b.den);
    return normalize(static_cast<i64>(num % den), den);
}

Angle negateAngle(Angle a) { return normalize(-a.num, a.den); }

cplx rootOfUnity(Angle a) {
    i64 n = mod(a.num, a.den);
    i64 d = a.den;
    // exact quarter turns
    if ((4 * n) % d == 0) {
        switch ((4 * n) / d) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    long double x = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(n) /
                    static_cast<long double>(d);
    return {static_cast<double>(std::cos(x)), static_cast<double>(std::sin(x))};
}

// ---------------------------------------------------------------- UnitGroup

UnitGroup::UnitGroup(i64 m) : modulus_(m) {
    if (m < 1) throw UsageError("modulus must be positive");
    for (auto [p, k] : factorize(m)) {
        Component c;
        c.p = p;
        c.k = k;
        c.pk = ipow(p, k);
        c.firstGen = static_cast<int>(gens_.size());
        c.table.assign(static_cast<std::size_t>(c.pk), -1);
        i64 rest = m / c.pk;
        auto lift = [&](i64 g) { return crt(mod(g, c.pk), c.pk, 1, rest); };
        if (p == 2) {
            if (k == 1) {
                c.genCount = 0;
                c.table[1] = 0;
            } else if (k == 2) {
                c.genCount = 1;
                gens_.push_back(lift(3));
                orders_.push_back(2);
                c.table[1] = 0;
                c.table[3] = 1;
            } else {
                c.genCount = 2;
                i64 o2 = c.pk / 4;
                gens_.push_back(lift(c.pk - 1));
                orders_.push_back(2);
                gens_.push_back(lift(5));
                orders_.push_back(o2);
                i64 x = 1;
                for (i64 b = 0; b < o2; ++b) {
                    c.table[x] = static_cast<std::int32_t>(b);
                    c.table[c.pk - x] = static_cast<std::int32_t>(o2 + b);
                    x = x * 5 % c.pk;
                }
            }
        } else {
            i64 g = primitiveRootModP(p);
            if (k >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
            i64 o = (p - 1) * (c.pk / p);
            c.genCount = 1;
            gens_.push_back(lift(g));
            orders_.push_back(o);
            i64 x = 1;
            for (i64 i = 0; i < o; ++i) {
                c.table[x] = static_cast<std::int32_t>(i);
                x = x * g % c.pk;
            }
        }
        comps_.push_back(std::move(c));
    }
    for (i64 o : orders_) {
        order_ *= o;
        exponent_ = lcm(exponent_, o);
    }
    roots_.resize(static_cast<std::size_t>(exponent_));
    for (i64 k = 0; k < exponent_; ++k) roots_[k] = rootOfUnity(Angle{k, exponent_});
}

std::shared_ptr<const UnitGroup> UnitGroup::get(i64 modulus) {
    static std::mutex mu;
    static std::map<i64, std::shared_ptr<const UnitGroup>> cache;
    if (modulus < 1) throw UsageError("modulus must be positive");
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(modulus);
    if (it != cache.end()) return it->second;
    std::shared_ptr<const UnitGroup> g(new UnitGroup(modulus));
    cache.emplace(modulus, g);
    return g;
}

bool UnitGroup::dlog(i64 n, i64* out) const {
    for (const auto& c : comps_) {
        std::int32_t v = c.table[static_cast<std::size_t>(mod(n, c.pk))];
        if (v < 0) return false;
        if (c.genCount == 1) {
            out[c.firstGen] = v;
        } else if (c.genCount == 2) {
            i64 o2 = orders_[c.firstGen + 1];
            out[c.firstGen] = v / o2;
            out[c.firstGen + 1] = v % o2;
        }
    }
    return true;
}

std::vector<i64> UnitGroup::dlog(i64 n) const {
    std::vector<i64> v(gens_.size());
    if (!dlog(n, v.data())) return {};
    return v;
}

// ------------------------------------------------------ DirichletCharacter

DirichletCharacter::DirichletCharacter() : DirichletCharacter(UnitGroup::get(1), {}) {}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<i64> exps)
    : group_(std::move(group)), exps_(std::move(exps)) {
    const auto& ord = group_->cyclicOrders();
    if (exps_.size() != ord.size()) throw UsageError("exponent vector has wrong length");
    scaled_.resize(exps_.size());
    order_ = 1;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        exps_[i] = mod(exps_[i], ord[i]);
        scaled_[i] = exps_[i] * (group_->exponent() / ord[i]);
        order_ = lcm(order_, ord[i] / gcd(exps_[i], ord[i]));
    }
    even_ = angle(-1)->num == 0;

    // Conductor, one prime power at a time.
    conductor_ = 1;
    for (const auto& c : group_->components()) {
        int cexp = 0;
        if (c.p == 2) {
            if (c.k == 2) {
                cexp = exps_[c.firstGen] ? 2 : 0;
            } else if (c.k >= 3) {
                i64 e1 = exps_[c.firstGen];
                i64 e2 = exps_[c.firstGen + 1];
                if (e2 == 0) {
                    cexp = e1 ? 2 : 0;
                } else {
                    cexp = 3;
                    while (e2 % ipow(2, c.k - cexp) != 0) ++cexp;
                }
            }
        } else {
            i64 e = exps_[c.firstGen];
            if (e != 0) {
                cexp = 1;
                while (e % ipow(c.p, c.k - cexp) != 0) ++cexp;
            }
        }
        conductor_ *= ipow(c.p, cexp);
    }
}

DirichletCharacter DirichletCharacter::principal(i64 modulus) {
    auto g = UnitGroup::get(modulus);
    return DirichletCharacter(g, std::vector<i64>(g->cyclicOrders().size(), 0));
}

bool DirichletCharacter::isPrincipal() const {
    for (i64 e : exps_)
        if (e) return false;
    return true;
}

std::optional<Angle> DirichletCharacter::angle(i64 n) const {
    const i64 m = modulus();
    if (m == 1) return Angle{0, 1};
    i64 buf[64];
    if (!group_->dlog(n, buf)) return std::nullopt;
    i64 L = group_->exponent();
    __int128 acc = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) acc += static_cast<__int128>(scaled_[i]) * buf[i];
    return normalize(static_cast<i64>(acc % L), L);
}

cplx DirichletCharacter::operator()(i64 n) const {
    const i64 m = modulus();
    if (m == 1) return 1.0;
    i64 buf[64];
    if (!group_->dlog(n, buf)) return 0.0;
    i64 L = group_->exponent();
    __int128 acc = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) acc += static_cast<__int128>(scaled_[i]) * buf[i];
    return group_->root(static_cast<i64>(acc % L));
}

DirichletCharacter DirichletCharacter::conj() const {
    std::vector<i64> e(exps_);
    for (auto& x : e) x = -x;
    return DirichletCharacter(group_, e);
}

std::vector<cplx> DirichletCharacter::table() const {
    const i64 m = modulus();
    std::vector<cplx> t(static_cast<std::size_t>(m));
    for (i64 n = 0; n < m; ++n) t[n] = (*this)(n);
    return t;
}

std::string DirichletCharacter::id() const {
    std::ostringstream os;
    os << modulus() << ":";
    for (std::size_t i = 0; i < exps_.size(); ++i) os << (i ? "," : "") << exps_[i];
    return os.str();
}

DirichletCharacter characterFromId(const std::string& id) {
    const auto colon = id.find(':');
    if (colon == std::string::npos) throw UsageError("character id '" + id + "' has no ':'");
    i64 m = 0;
    std::vector<i64> exps;
    try {
        std::size_t used = 0;
        m = std::stoll(id.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("modulus");
        std::string rest = id.substr(colon + 1);
        std::size_t pos = 0;
        while (!rest.empty() && pos <= rest.size()) {
            const auto comma = rest.find(',', pos);
            const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            exps.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument("exponent");
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    } catch (const std::logic_error&) {
        throw UsageError("character id '" + id + "' is malformed");
    }
    if (m < 1) throw UsageError("character id '" + id + "' has a nonpositive modulus");
    return DirichletCharacter(UnitGroup::get(m), exps);
}

bool DirichletCharacter::operator==(const DirichletCharacter& o) const {
    return modulus() == o.modulus() && exps_ == o.exps_;
}

i64 conductorByInduction(const DirichletCharacter& chi) {
    const i64 m = chi.modulus();
    for (i64 d : divisors(m)) {
        // chi is induced from modulus d iff chi(n) = 1 for every unit n = 1 (mod d)
        bool induced = true;
        for (i64 n = 1; n < m + 1 && induced; n += d) {
            if (gcd(n, m) != 1) continue;
            auto a = chi.angle(n);
            if (a->num != 0) induced = false;
        }
        if (induced) return d;
    }
    return m;
}

DirichletCharacter characterFromGeneratorAngles(i64 modulus, const std::vector<Angle>& genAngles) {
    auto g = UnitGroup::get(modulus);
    const auto& ord = g->cyclicOrders();
    if (genAngles.size() != ord.size()) throw UsageError("wrong number of generator values");
    std::vector<i64> e(ord.size());
    for (std::size_t i = 0; i < ord.size(); ++i) {
        __int128 x = static_cast<__int128>(genAngles[i].num) * ord[i];
        if (x % genAngles[i].den != 0) throw MathError("generator value is not a root of the right order");
        e[i] = static_cast<i64>(x / genAngles[i].den);
    }
    return DirichletCharacter(g, e);
}

DirichletCharacter multiply(const DirichletCharacter& a, const DirichletCharacter& b) {
    i64 M = lcm(a.modulus(), b.modulus());
    auto g = UnitGroup::get(M);
    std::vector<Angle> ang;
    for (i64 gen : g->generators()) ang.push_back(addAngles(*a.angle(gen), *b.angle(gen)));
    return characterFromGeneratorAngles(M, ang);
}

DirichletCharacter induce(const DirichletCharacter& chi, i64 M) {
    if (M % chi.modulus() != 0) throw UsageError("induce: target modulus must be a multiple");
    return multiply(chi, DirichletCharacter::principal(M));
}

DirichletCharacter primitiveOf(const DirichletCharacter& chi) {
    const i64 m = chi.modulus();
    const i64 f = chi.conductor();
    i64 fp = 1;
    for (i64 p : primeDivisors(f)) fp *= ipow(p, valuation(m, p));
    i64 rest = m / fp;
    auto g = UnitGroup::get(f);
    std::vector<Angle> ang;
    for (i64 h : g->generators()) ang.push_back(*chi.angle(crt(mod(h, fp), fp, 1, rest)));
    return characterFromGeneratorAngles(f, ang);
}

std::vector<DirichletCharacter> characterTable(i64 m) {
    if (m < 1) throw UsageError("characterTable: modulus must be positive");
    if (m > 1000000) throw UsageError("characterTable: modulus above 10^6");
    auto g = UnitGroup::get(m);
    const auto& ord = g->cyclicOrders();
    std::vector<DirichletCharacter> out;
    out.reserve(static_cast<std::size_t>(g->order()));
    std::vector<i64> e(ord.size(), 0);
    for (;;) {
        out.emplace_back(g, e);
        std::size_t i = 0;
        while (i < e.size() && ++e[i] == ord[i]) e[i++] = 0;
        if (i == e.size()) break;
    }
    return out;
}

std::vector<DirichletCharacter> evenPrimitiveCharacters(i64 m) {
    std::vector<DirichletCharacter> out;
    for (auto& c : characterTable(m))
        if (c.isEven() && c.isPrimitive()) out.push_back(c);
    return out;
}

cplx evalChar(const DirichletCharacter& chi, i64 n) { return chi(n); }

cplx gaussSum(const DirichletCharacter& chi) {
    const i64 m = chi.modulus();
    std::vector<cplx> terms;
    terms.reserve(static_cast<std::size_t>(m));
    for (i64 a = 0; a < m; ++a) {
        auto ang = chi.angle(a);
        if (!ang) continue;
        terms.push_back(rootOfUnity(addAngles(*ang, Angle{a, m})));
    }
    return pairwiseSum(terms);
}

cplx epsilon(const DirichletCharacter& chi) {
    return gaussSum(chi) / std::sqrt(static_cast<double>(chi.modulus()));
}

std::pair<DirichletCharacter, DirichletCharacter> crtFactor(const DirichletCharacter& chi, i64 m1, i64 m2) {
    if (m1 < 1 || m2 < 1 || m1 * m2 != chi.modulus() || gcd(m1, m2) != 1)
        throw UsageError("crtFactor: need modulus = m1 * m2 with gcd(m1, m2) = 1");
    auto part = [&](i64 mi, i64 mo) {
        auto g = UnitGroup::get(mi);
        std::vector<Angle> ang;
        for (i64 h : g->generators()) ang.push_back(*chi.angle(crt(mod(h, mi), mi, 1, mo)));
        return characterFromGeneratorAngles(mi, ang);
    };
    return {part(m1, m2), part(m2, m1)};
}

cplx convolve(const DirichletCharacter& a, const DirichletCharacter& b, i64 n) {
    if (n < 1) throw UsageError("convolve: n must be positive");
    cplx s = 0.0;
    for (i64 d : divisors(n)) s += a(d) * b(n / d);
    return s;
}

namespace {

cplx kloostermanImpl(const DirichletCharacter* chi, i64 m, i64 n, i64 c) {
    if (c < 1) throw UsageError("kloosterman: modulus must be positive");
    std::vector<cplx> terms;
    for (i64 x = 0; x < c; ++x) {
        if (gcd(x, c) != 1) continue;
        i64 xi = invmod(x, c);
        i64 num = mod(mulmod(m, x, c) + mulmod(n, xi, c), c);
        Angle a{num, c};
        if (chi) a = addAngles(a, *chi->angle(x));
        terms.push_back(rootOfUnity(a));
    }
    return pairwiseSum(terms);
}

}  // namespace

cplx kloosterman(i64 m, i64 n, i64 c) { return kloostermanImpl(nullptr, m, n, c); }

cplx hybridKloosterman(const DirichletCharacter& chi, i64 m, i64 n, i64 c) {
    if (c < 1 || c % chi.modulus() != 0) throw UsageError("hybridKloosterman: character modulus must divide c");
    return kloostermanImpl(&chi, m, n, c);
}

cplx ramanujan(i64 q, i64 n) { return kloosterman(0, n, q); }

MultKResult verifyMultK(const DirichletCharacter& phi1, const DirichletCharacter& phi2, i64 a, i64 b) {
    const i64 c = phi1.modulus(), d = phi2.modulus();
    if (gcd(c, d) != 1) throw UsageError("verifyMultK: moduli must be coprime");
    auto prod = multiply(phi1, phi2);
    cplx lhs = hybridKloosterman(prod, a, b, c * d);
    i64 dinv = invmod(d, c), cinv = invmod(c, d);
    cplx s1 = hybridKloosterman(phi1, a, mulmod(b, mulmod(dinv, dinv, c), c), c);
    cplx s2 = hybridKloosterman(phi2, a, mulmod(b, mulmod(cinv, cinv, d), d), d);
    cplx printed = s1 * s2;
    cplx rhs = phi1(d) * phi2(c) * printed;
    return {std::abs(lhs - rhs), std::abs(lhs - printed), lhs, rhs};
}

// ---------------------------------------------------------------- Quadruple

double Quadruple::qhat() const {
    return static_cast<double>(q) * std::pow(static_cast<double>(Dprod()), 0.25) / std::numbers::pi;
}

void Quadruple::validate() const {
    if (!isPrime(q)) throw UsageError("q must be prime");
    for (int j = 0; j < 4; ++j) {
        if (D[j] < 1 || !isSquarefree(D[j])) throw UsageError("each D_j must be square-free");
        if (D[j] % q == 0) throw UsageError("q must not divide D_1 D_2 D_3 D_4");
        for (int k = j + 1; k < 4; ++k)
            if (gcd(D[j], D[k]) != 1) throw UsageError("the D_j must be pairwise coprime");
        if (chi[j].modulus() != D[j]) throw UsageError("chi_j must have modulus D_j");
        if (!chi[j].isPrimitive() || !chi[j].isEven()) throw UsageError("chi_j must be even and primitive");
    }
    if (ell[0] < 1 || ell[1] < 1) throw UsageError("twists must be positive");
    if (gcd(ell[0] * ell[1], q) != 1) throw UsageError("twists must be coprime to q");
}

Quadruple makeQuadruple(i64 q, std::array<i64, 4> D, double t, std::array<i64, 2> ell, std::array<int, 4> choice) {
    Quadruple Q;
    Q.q = q;
    Q.D = D;
    Q.t = t;
    Q.ell = ell;
    for (int j = 0; j < 4; ++j) {
        auto cs = evenPrimitiveCharacters(D[j]);
        if (cs.empty()) throw UsageError("no even primitive character mod " + std::to_string(D[j]));
        if (choice[j] < 0 || choice[j] >= static_cast<int>(cs.size()))
            throw UsageError("character choice out of range for modulus " + std::to_string(D[j]));
        Q.chi[j] = cs[choice[j]];
    }
    Q.validate();
    return Q;
}

}  // namespace fourl
