#include "fourl/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include "fourl/errors.hpp"
#include "fourl/eulerprod.hpp"
#include "fourl/lfun.hpp"
#include "fourl/mollifier.hpp"
#include "fourl/moments.hpp"
#include "fourl/voronoi.hpp"

namespace fourl {

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
    json details = json::object();
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}
std::string g3(double x) { return fmt("%.3g", x); }

Outcome orthogonality(const SuiteOptions&) {
    Outcome o;
    int primes = 0;
    double worst = 0.0;
    for (i64 q = 5; q <= 101; ++q) {
        if (!isPrime(q)) continue;
        ++primes;
        const auto r = checkOrthogonality(q);
        worst = std::max(worst, r.maxError);
        const i64 expect = eulerPhi(q) / 2 - 1;
        const bool counts = phiPlus(q) == expect && static_cast<i64>(enumerateEvenPrimitive(q).size()) == expect;
        if (!r.exact || !counts) {
            o.pass = false;
            o.details["failedModuli"].push_back(q);
        }
    }
    o.details["primes"] = primes;
    o.details["maxError"] = worst;
    o.summary = std::to_string(primes) + " primes, exact sums, max rounding error " + g3(worst);
    return o;
}

Outcome gaussSums(const SuiteOptions&) {
    Outcome o;
    int count = 0;
    double worst = 0.0;
    for (i64 m = 1; m <= 200; ++m)
        for (const auto& chi : characterTable(m)) {
            if (!chi.isPrimitive()) continue;
            ++count;
            worst = std::max(worst, std::abs(std::abs(gaussSum(chi)) - std::sqrt(double(m))));
        }
    double quad = 1.0;
    for (const auto& chi : characterTable(5))
        if (chi.order() == 2) quad = std::abs(gaussSum(chi) - std::sqrt(5.0));
    o.pass = worst < 1e-10 && quad < 1e-12;
    o.details = {{"primitiveCharacters", count}, {"maxModulusError", worst}, {"quadraticMod5Error", quad}};
    o.summary = std::to_string(count) + " primitive characters, max ||tau|-sqrt m| " + g3(worst) +
                ", tau(quadratic mod 5) error " + g3(quad);
    return o;
}

Outcome functionalEquation(const SuiteOptions& opt) {
    Outcome o;
    std::mt19937_64 rng(opt.seed * 0x2545f4914f6cdd1dULL + 11);
    const cplx svals[5] = {{0.1, 0.0}, {0.0, 0.3}, {0.2, 1.0}, {-0.3, 0.5}, {0.4, -2.0}};
    std::vector<DirichletCharacter> pool;
    for (i64 m = 2; m <= 100; ++m)
        for (auto& c : evenPrimitiveCharacters(m)) pool.push_back(c);
    double worst = 0.0;
    json ids = json::array();
    for (int i = 0; i < 20; ++i) {
        const auto& chi = pool[rng() % pool.size()];
        ids.push_back(chi.id());
        for (const auto& s : svals) worst = std::max(worst, feResidual(chi, s));
    }
    o.pass = worst < 1e-9;
    o.details = {{"characters", ids}, {"maxResidual", worst}};
    o.summary = "20 characters x 5 s-values, max residual " + g3(worst);
    return o;
}

Outcome afe(const SuiteOptions&) {
    Outcome o;
    double worst = 0.0;
    for (i64 q : {11, 13, 17})
        for (std::array<i64, 4> D : {std::array<i64, 4>{1, 1, 1, 1}, std::array<i64, 4>{1, 5, 7, 1}}) {
            const auto Q = makeQuadruple(q, D, 0.0, {1, 1});
            const auto chars = enumerateEvenPrimitive(q);
            const AfeEngine eng(Q);
            const auto direct = directProductValues(Q, chars);
            double e = 0.0;
            for (std::size_t i = 0; i < chars.size(); ++i) e = std::max(e, std::abs(eng.value(chars[i]) - direct[i]));
            worst = std::max(worst, e);
            o.details["cases"].push_back(json{{"q", q}, {"D", D}, {"maxError", e}});
        }
    o.pass = worst < 1e-7;
    o.summary = "6 cases, max |AFE - direct| " + g3(worst);
    return o;
}

Outcome diagonal(const SuiteOptions& opt) {
    Outcome o;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto c = randomDiagonalConfig(opt.seed * 7919ULL + i);
        const auto r = diagonalFactorization(c.chi, c.l1, c.l2, 2.0, 100000);
        worst = std::max(worst, r.residual);
        o.details["configs"].push_back(
            json{{"chi", c.ids}, {"l1", c.l1}, {"l2", c.l2}, {"residual", r.residual}});
    }
    o.pass = worst < 1e-6;
    o.summary = "20 configurations at s = 2, N = 1e5, max residual " + g3(worst);
    return o;
}

Outcome multK(const SuiteOptions& opt) {
    Outcome o;
    std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + 3);
    double worst = 0.0;
    int done = 0;
    while (done < 50) {
        const i64 c = 2 + static_cast<i64>(rng() % 40), d = 2 + static_cast<i64>(rng() % 40);
        if (gcd(c, d) != 1) continue;
        const auto t1 = characterTable(c), t2 = characterTable(d);
        const auto& p1 = t1[rng() % t1.size()];
        const auto& p2 = t2[rng() % t2.size()];
        const i64 a = static_cast<i64>(rng() % (c * d)), b = static_cast<i64>(rng() % (c * d));
        const auto r = verifyMultK(p1, p2, a, b);
        worst = std::max(worst, r.residual);
        ++done;
    }
    o.pass = worst < 1e-9;
    o.details["maxResidual"] = worst;
    o.summary = "50 configurations, max residual " + g3(worst);
    return o;
}

Outcome identities(const SuiteOptions& opt) {
    Outcome o;
    double w1 = 0.0, w2 = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto c = randomIdentityConfig(opt.seed * 1000003ULL + i);
        for (const auto& s : identitySGrid()) w1 = std::max(w1, verifyIdentity(c.chi, c.l1, c.l2, s).residual);
        w2 = std::max(w2, verifySecondIdentity(c.chi, c.l1, c.l2).residual);
    }
    o.pass = w1 < 1e-9 && w2 < 1e-9;
    o.details = {{"identityMaxResidual", w1}, {"secondIdentityMaxResidual", w2}};
    o.summary = "100 configurations x 5 s: max " + g3(w1) + "; second identity, 100 configurations: max " + g3(w2);
    return o;
}

Outcome cyclotomic(const SuiteOptions& opt) {
    Outcome o;
    const auto r = cyclotomicScan(24, {2, 3, 4}, opt.workers);
    const auto r5 = cyclotomicScan(24, {5}, opt.workers);
    const double floor5 = 4.0 / 25.0;
    o.pass = r.minModulus > 0 && r5.minModulus >= floor5 - 1e-12;
    o.details = {{"minModulus", r.minModulus}, {"argminM", r.m}, {"tuples", r.tuples},
                 {"m5MinModulus", r5.minModulus}, {"m5Floor", floor5}};
    o.summary = "orders <= 24, m in {2,3,4}: min " + g3(r.minModulus) + " at m = " + std::to_string(r.m) +
                "; m = 5: min " + fmt("%.6f", r5.minModulus) + " >= 4/25";
    return o;
}

Outcome determinantScan(const SuiteOptions& opt) {
    Outcome o;
    auto recs = detScan(detScanList(), opt.workers);
    double lit = 1e300, der = 1e300, mismatch = 0.0;
    int vacuous = 0, escalated = 0, checked = 0;
    for (const auto& r : recs) {
        if (r.vacuous) {
            ++vacuous;
            o.details["vacuous"].push_back(r.D);
            continue;
        }
        ++checked;
        lit = std::min(lit, r.detModulus);
        der = std::min(der, r.derivedDetModulus);
        mismatch = std::max(mismatch, r.entryMismatch);
        escalated += r.escalated;
    }
    o.pass = checked > 0 && lit > 1e-8 && der > 1e-8;
    o.details["records"] = recs.size();
    o.details["checked"] = checked;
    o.details["minDetLiteral"] = lit;
    o.details["minDetDerived"] = der;
    o.details["maxEntryMismatch"] = mismatch;
    o.details["escalated"] = escalated;
    o.summary = std::to_string(checked) + " combinations, min |det| " + g3(lit) + " (derived rows " + g3(der) + "), " +
                std::to_string(vacuous) + " vacuous tuples reported";
    return o;
}

Outcome voronoi(const SuiteOptions&) {
    Outcome o;
    double worst = 0.0;
    int passed = 0;
    const auto grid = voronoiGrid();
    for (const auto& e : grid) {
        const double tol = e.reference ? 1e-6 : 1e-5;
        json rec{{"name", e.name}, {"reference", e.reference}, {"tolerance", tol}};
        try {
            const auto r = verifyVoronoi(e.config);
            rec["residual"] = r.residual;
            rec["dualCutoff"] = r.rhs.dualCutoff;
            rec["tailEstimate"] = r.rhs.tailEstimate;
            worst = std::max(worst, r.residual);
            if (r.residual < tol) ++passed;
            else o.pass = false;
        } catch (const MathError& ex) {
            rec["error"] = ex.what();
            o.pass = false;
        }
        o.details["configs"].push_back(rec);
    }
    o.summary = std::to_string(passed) + "/" + std::to_string(grid.size()) + " configurations, max residual " + g3(worst);
    return o;
}

Outcome momentTrend(const SuiteOptions& opt) {
    Outcome o;
    std::vector<double> rel;
    cplx viaHurwitz;
    for (i64 q : {101, 211, 401}) {
        BruteForceOptions bo;
        bo.method = MomentMethod::Hurwitz;
        bo.workers = opt.workers;
        const auto r = momentReport(makeQuadruple(q, {1, 5, 7, 11}, 0.0, {1, 1}), bo);
        rel.push_back(std::abs(r.residual) / std::abs(r.prediction));
        if (q == 101) viaHurwitz = r.bruteForce;
        o.details["reports"].push_back(toJson(r));
    }
    int violations = 0;
    for (std::size_t i = 1; i < rel.size(); ++i) violations += rel[i] > rel[i - 1];
    BruteForceOptions afeOpt;
    afeOpt.method = MomentMethod::Afe;
    afeOpt.afeTolerance = 1e-9;
    afeOpt.workers = opt.workers;
    const auto Q = makeQuadruple(101, {1, 5, 7, 11}, 0.0, {1, 1});
    const auto viaAfe = bruteForceMoment(Q, afeOpt);
    const double cross = std::abs(viaAfe.value - viaHurwitz);
    o.pass = violations <= 1 && cross < 1e-6;
    o.details["relResiduals"] = rel;
    o.details["trendViolations"] = violations;
    o.details["crossCheck"] = cross;
    o.summary = "relative residuals " + g3(rel[0]) + ", " + g3(rel[1]) + ", " + g3(rel[2]) + " (" +
                std::to_string(violations) + " increases); q = 101 AFE vs Hurwitz " + g3(cross);
    return o;
}

Outcome mollifier(const SuiteOptions& opt) {
    Outcome o;
    const double lam = solveLambda();
    const double lamRes = std::abs(std::exp(-lam) - lam - lam * lam / 2);

    // synthetic two-block specs at q = 101
    double power = 0.0;
    const auto chars = evenPrimitiveCharacters(101);
    const auto b = [](double x) { return std::log(x) / std::log(101.0); };
    const std::vector<MollifierSpec> specs = {customSpec(101, 3, {b(7.0), b(50.0)}, {3, 2}),
                                              customSpec(101, 2, {b(13.0), b(60.0)}, {2, 3}),
                                              customSpec(101, 4, {b(5.0), b(30.0)}, {4, 2})};
    for (std::size_t i = 0; i < specs.size(); ++i)
        for (int j = 0; j <= specs[i].K; ++j) {
            const auto r = verifyPowerExpansion(specs[i], j, specs[i].k, chars[(3 * i + j) % chars.size()], 0.7);
            power = std::max(power, r.residual);
        }

    // gates: the default ladder passes, a spec that breaks them is refused
    const auto pd = paperDefaultSpec(101, 6);
    const auto gpd = parameterGates(pd);
    auto bad = customSpec(101, 6, {0.5}, {4});
    bad.paperDefaults = true;
    bool refused = false;
    try {
        factorD(chars[0], bad, 0, 6, 0.0);
    } catch (const MathError&) {
        refused = true;
    }
    const auto scaled = scaledSpec(101, 6);
    const auto h = holderDemo(scaled, {1, 5, 7, 11}, 0.0, opt.workers);

    o.pass = lamRes < 1e-12 && power < 1e-10 && gpd.holds && refused && h.holds;
    o.details = {{"lambda", lam},
                 {"lambdaResidual", lamRes},
                 {"powerExpansionMaxResidual", power},
                 {"defaultGate", gpd.first},
                 {"defaultGateHolds", gpd.holds},
                 {"violatingSpecRefused", refused},
                 {"scaledGate", parameterGates(scaled).first},
                 {"holder", json{{"characters", h.characterCount},
                                 {"nonvanishing", h.nonvanishing},
                                 {"lhs", h.lhs},
                                 {"rhs", h.rhs},
                                 {"holds", h.holds}}}};
    o.summary = "lambda residual " + g3(lamRes) + ", power expansion " + g3(power) + ", default gate " +
                g3(gpd.first) + (refused ? " (violation refused)" : " (violation NOT refused)") + ", Holder " +
                g3(h.lhs) + (h.holds ? " >= " : " < ") + g3(h.rhs);
    return o;
}

Outcome logBound(const SuiteOptions&) {
    Outcome o;
    double worst = 1e300;
    int count = 0;
    for (i64 m : {5, 13, 29})
        for (const auto& chi : evenPrimitiveCharacters(m))
            for (double t : {0.0, 1.0})
                for (double x : {1e3, 1e4}) {
                    const auto r = grhLogBoundGap(chi, t, x);
                    worst = std::min(worst, r.gap);
                    ++count;
                }
    o.pass = worst >= -0.1;
    o.details = {{"evaluations", count}, {"minGap", worst}};
    o.summary = std::to_string(count) + " evaluations, min gap " + g3(worst);
    return o;
}

using Runner = Outcome (*)(const SuiteOptions&);

struct Entry {
    CriterionInfo info;
    Runner run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = {
        {{"orthogonality", "character orthogonality and phi+(q), primes 5..101", 10}, orthogonality},
        {{"gauss-sums", "|tau(chi)| = sqrt(m) for primitive chi, m <= 200", 10}, gaussSums},
        {{"functional-equation", "completed L functional equation, 20 characters x 5 s", 30}, functionalEquation},
        {{"afe", "approximate functional equation vs direct product", 120}, afe},
        {{"diagonal-factorization", "diagonal series vs F H prod L at s = 2", 60}, diagonal},
        {{"twisted-multiplicativity", "hybrid Kloosterman sums over coprime moduli", 10}, multK},
        {{"identities", "c+ / c- identity and the c+(0) identity", 120}, identities},
        {{"cyclotomic", "lower bound for the cyclotomic expression", 300}, cyclotomic},
        {{"det-scan", "nonvanishing of the sixfold determinant", 600}, determinantScan},
        {{"voronoi", "Voronoi summation on the configuration grid", 600}, voronoi},
        {{"moment-trend", "twisted fourth moment residual trend", 1800}, momentTrend},
        {{"mollifier", "mollifier identities, gates and the Holder bound", 300}, mollifier},
        {{"log-bound", "conditional log|L| bound diagnostic", 60}, logBound},
    };
    return e;
}

}  // namespace

const std::vector<CriterionInfo>& suiteCriteria() {
    static const std::vector<CriterionInfo> info = [] {
        std::vector<CriterionInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return info;
}

CriterionResult runCriterion(const std::string& name, const SuiteOptions& opt) {
    for (const auto& e : entries()) {
        if (e.info.name != name) continue;
        CriterionResult r;
        r.name = name;
        r.budgetSeconds = e.info.budgetSeconds;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            auto o = e.run(opt);
            r.pass = o.pass;
            r.summary = o.summary;
            r.details = std::move(o.details);
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception& ex) {
            r.pass = false;
            r.summary = std::string("error: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }
    throw UsageError("unknown criterion '" + name + "'");
}

std::vector<CriterionResult> runSuite(const SuiteOptions& opt,
                                      const std::function<void(const CriterionResult&)>& onDone) {
    for (const auto& n : opt.only) {
        const auto& all = suiteCriteria();
        if (std::none_of(all.begin(), all.end(), [&](const CriterionInfo& c) { return c.name == n; }))
            throw UsageError("unknown criterion '" + n + "'");
    }
    std::vector<CriterionResult> out;
    for (const auto& c : suiteCriteria()) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), c.name) == opt.only.end()) continue;
        out.push_back(runCriterion(c.name, opt));
        if (onDone) onDone(out.back());
    }
    return out;
}

std::string formatCriterionLine(const CriterionResult& r) {
    const bool ok = r.pass && r.withinBudget();
    std::string line = std::string(ok ? "PASS " : "FAIL ") + r.name + " (" + fmt("%.1f", r.seconds) + "s";
    if (!r.withinBudget()) line += ", over the " + fmt("%.0f", r.budgetSeconds) + "s budget";
    return line + "): " + r.summary;
}

}  // namespace fourl
