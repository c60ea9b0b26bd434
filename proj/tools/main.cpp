// fourl: command-line front end. Exit 0 when every assertion holds, 1 when one fails,
// 2 on usage or configuration errors.
#include <algorithm>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fourl/errors.hpp"
#include "fourl/eulerprod.hpp"
#include "fourl/lfun.hpp"
#include "fourl/mollifier.hpp"
#include "fourl/moments.hpp"
#include "fourl/report.hpp"
#include "fourl/suite.hpp"
#include "fourl/voronoi.hpp"

using namespace fourl;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

std::vector<i64> parseInts(const std::string& s, const std::string& what) {
    std::vector<i64> out;
    for (const auto& tok : split(s, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            throw UsageError(what + ": '" + s + "' is not a comma-separated integer list");
        }
    }
    if (out.empty()) throw UsageError(what + " is empty");
    return out;
}

template <std::size_t N>
std::array<i64, N> parseFixed(const std::string& s, const std::string& what) {
    const auto v = parseInts(s, what);
    if (v.size() != N) throw UsageError(what + " needs " + std::to_string(N) + " entries");
    std::array<i64, N> a{};
    std::copy(v.begin(), v.end(), a.begin());
    return a;
}

std::vector<double> parseDoubles(const std::string& s, const std::string& what) {
    std::vector<double> out;
    for (const auto& tok : split(s, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
            throw UsageError(what + ": '" + s + "' is not a comma-separated number list");
        }
    }
    return out;
}

std::string g6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Options every subcommand shares.
struct Common {
    std::string config;
    std::uint64_t seed = 1;
    std::string out;
    int workers = 0;
};

void addCommon(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "JSON file of option values; flags take precedence");
    sub->add_option("--seed", c.seed, "seed recorded in the report");
    sub->add_option("--out", c.out, "write the JSON report here ('-' for stdout)");
    sub->add_option("--workers", c.workers, "worker threads (default: FOURL_WORKERS or all cores)");
}

// Fills options absent from the command line with values from the JSON config.
void applyConfig(CLI::App* sub, const std::string& path) {
    if (path.empty()) return;
    json cfg;
    try {
        cfg = json::parse(readTextFile(path));
    } catch (const json::exception& e) {
        throw UsageError("config '" + path + "': " + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config '" + path + "' must be a JSON object");
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        if (it.key() == "config") throw UsageError("config files cannot nest");
        CLI::Option* opt = sub->get_option_no_throw("--" + it.key());
        if (!opt) throw UsageError("config key '" + it.key() + "' is not an option of " + sub->get_name());
        if (opt->count() > 0) continue;
        std::string v;
        const auto& val = it.value();
        if (val.is_string()) {
            v = val.get<std::string>();
        } else if (val.is_array()) {
            for (std::size_t i = 0; i < val.size(); ++i) {
                if (i) v += ",";
                v += val[i].is_string() ? val[i].get<std::string>() : val[i].dump();
            }
        } else if (val.is_boolean()) {
            v = val.get<bool>() ? "true" : "false";
        } else {
            v = val.dump();
        }
        opt->add_result(v);
        try {
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError("config key '" + it.key() + "': " + e.what());
        }
    }
}

void emit(const Report& rep, const std::string& out) {
    if (out.empty()) return;
    if (out == "-") {
        std::cout << rep.dump();
        return;
    }
    writeTextFile(out, rep.dump());
}

int finish(const Report& rep, const Common& c) {
    emit(rep, c.out);
    for (const auto& f : rep.failures) std::cerr << "assertion failed: " << f << "\n";
    std::cerr << rep.command << ": " << (rep.pass ? "pass" : "FAIL") << "\n";
    return rep.pass ? 0 : 1;
}

Report newReport(const std::string& cmd, const Common& c) {
    Report r;
    r.command = cmd;
    r.seed = c.seed;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical experiments on twisted fourth moments of Dirichlet L-functions"};
    app.require_subcommand(1);
    Common common;
    std::function<int()> action;

    // ---- chars
    auto* chars = app.add_subcommand("chars", "list the Dirichlet characters mod m");
    i64 charsM = 5;
    bool charsEvenPrimitive = false;
    chars->add_option("--m", charsM, "modulus");
    chars->add_flag("--even-primitive", charsEvenPrimitive, "only even primitive characters");
    addCommon(chars, common);
    chars->callback([&] {
        action = [&] {
            if (charsM < 1) throw UsageError("--m must be positive");
            auto rep = newReport("chars", common);
            rep.config = {{"m", charsM}, {"evenPrimitive", charsEvenPrimitive}};
            const auto list = charsEvenPrimitive ? evenPrimitiveCharacters(charsM) : characterTable(charsM);
            for (const auto& chi : list) {
                json r{{"id", chi.id()},          {"modulus", chi.modulus()}, {"conductor", chi.conductor()},
                       {"order", chi.order()},    {"even", chi.isEven()},     {"primitive", chi.isPrimitive()},
                       {"gaussSum", toJson(gaussSum(chi))}};
                if (chi.isPrimitive()) r["epsilon"] = toJson(epsilon(chi));
                rep.records.push_back(tagged(r, "character-table", "computed"));
                std::cout << chi.id() << (chi.isEven() ? " even" : " odd") << " conductor " << chi.conductor()
                          << " order " << chi.order() << "\n";
            }
            return finish(rep, common);
        };
    });

    // ---- afe-check
    auto* afeCmd = app.add_subcommand("afe-check", "approximate functional equation against direct L-values");
    i64 afeQ = 11;
    std::string afeD = "1,1,1,1", afeL = "1,1";
    double afeT = 0.0, afeTol = 1e-12, afeThreshold = 1e-7;
    afeCmd->add_option("--q", afeQ, "prime modulus");
    afeCmd->add_option("--D", afeD, "moduli D1,D2,D3,D4");
    afeCmd->add_option("--t", afeT, "height t");
    afeCmd->add_option("--l", afeL, "twists l1,l2");
    afeCmd->add_option("--afe-tol", afeTol, "V-decay level fixing the AFE length");
    afeCmd->add_option("--threshold", afeThreshold, "largest accepted |AFE - direct|");
    addCommon(afeCmd, common);
    afeCmd->callback([&] {
        action = [&] {
            const auto Q = makeQuadruple(afeQ, parseFixed<4>(afeD, "--D"), afeT, parseFixed<2>(afeL, "--l"));
            Q.validate();
            auto rep = newReport("afe-check", common);
            rep.config = {{"q", afeQ}, {"D", Q.D}, {"t", afeT}, {"l", Q.ell}, {"afeTol", afeTol}, {"threshold", afeThreshold}};
            AfeOptions ao;
            ao.tolerance = afeTol;
            const AfeEngine eng(Q, ao);
            const auto list = enumerateEvenPrimitive(afeQ);
            const auto direct = directProductValues(Q, list);
            double worst = 0.0;
            for (std::size_t i = 0; i < list.size(); ++i) {
                const cplx v = eng.value(list[i]);
                const double e = std::abs(v - direct[i]);
                worst = std::max(worst, e);
                rep.records.push_back(tagged(
                    json{{"chi", list[i].id()}, {"afe", toJson(v)}, {"direct", toJson(direct[i])}, {"error", e}},
                    "approximate-functional-equation", "computed"));
                if (!(e < afeThreshold)) rep.fail("chi " + list[i].id() + ": |AFE - direct| = " + g6(e));
            }
            std::cout << list.size() << " characters, AFE length " << eng.cutoff() << ", max error " << g6(worst) << "\n";
            return finish(rep, common);
        };
    });

    // ---- fe-check
    auto* feCmd = app.add_subcommand("fe-check", "functional equation of the completed L-function");
    int feCount = 20;
    i64 feMaxM = 100;
    double feThreshold = 1e-9;
    feCmd->add_option("--count", feCount, "number of random even primitive characters");
    feCmd->add_option("--max-modulus", feMaxM, "largest modulus drawn");
    feCmd->add_option("--threshold", feThreshold, "largest accepted residual");
    addCommon(feCmd, common);
    feCmd->callback([&] {
        action = [&] {
            if (feCount < 1 || feMaxM < 3) throw UsageError("--count must be positive and --max-modulus at least 3");
            auto rep = newReport("fe-check", common);
            rep.config = {{"count", feCount}, {"maxModulus", feMaxM}, {"threshold", feThreshold}};
            std::vector<DirichletCharacter> pool;
            for (i64 m = 2; m <= feMaxM; ++m)
                for (auto& c : evenPrimitiveCharacters(m)) pool.push_back(c);
            if (pool.empty()) throw UsageError("no even primitive characters up to --max-modulus");
            std::mt19937_64 rng(common.seed);
            const cplx svals[5] = {{0.1, 0.0}, {0.0, 0.3}, {0.2, 1.0}, {-0.3, 0.5}, {0.4, -2.0}};
            double worst = 0.0;
            for (int i = 0; i < feCount; ++i) {
                const auto& chi = pool[rng() % pool.size()];
                for (const auto& s : svals) {
                    const double r = feResidual(chi, s);
                    worst = std::max(worst, r);
                    rep.records.push_back(
                        tagged(json{{"chi", chi.id()}, {"s", toJson(s)}, {"residual", r}}, "functional-equation", "computed"));
                    if (!(r < feThreshold)) rep.fail("chi " + chi.id() + " at s = " + g6(s.real()) + "+" + g6(s.imag()) + "i: " + g6(r));
                }
            }
            std::cout << feCount << " characters x 5 s-values, max residual " << g6(worst) << "\n";
            return finish(rep, common);
        };
    });

    // ---- moment
    auto* momCmd = app.add_subcommand("moment", "twisted fourth moment: brute force against the six-term prediction");
    i64 momQ = 101;
    std::string momD = "1,5,7,11", momL = "1,1", momChoice = "0,0,0,0", momMethod = "hurwitz", momCsv;
    double momT = 0.0, momAfeTol = 1e-9;
    std::optional<double> momMaxRel;
    momCmd->add_option("--q", momQ, "prime modulus");
    momCmd->add_option("--D", momD, "moduli D1,D2,D3,D4");
    momCmd->add_option("--t", momT, "height t");
    momCmd->add_option("--l", momL, "twists l1,l2");
    momCmd->add_option("--chars", momChoice, "index of chi_j among the even primitive characters mod D_j");
    momCmd->add_option("--method", momMethod, "afe or hurwitz")->check(CLI::IsMember({"afe", "hurwitz"}));
    momCmd->add_option("--afe-tol", momAfeTol, "V-decay level for the afe method");
    momCmd->add_option("--max-rel-residual", momMaxRel, "fail when the relative residual exceeds this");
    momCmd->add_option("--csv", momCsv, "write the residual table here");
    addCommon(momCmd, common);
    momCmd->callback([&] {
        action = [&] {
            const auto ch = parseFixed<4>(momChoice, "--chars");
            const auto Q = makeQuadruple(momQ, parseFixed<4>(momD, "--D"), momT, parseFixed<2>(momL, "--l"),
                                         {int(ch[0]), int(ch[1]), int(ch[2]), int(ch[3])});
            Q.validate();
            BruteForceOptions bo;
            bo.method = momMethod == "afe" ? MomentMethod::Afe : MomentMethod::Hurwitz;
            bo.afeTolerance = momAfeTol;
            bo.workers = common.workers;
            auto rep = newReport("moment", common);
            rep.config = {{"q", momQ}, {"D", Q.D}, {"t", momT}, {"l", Q.ell}, {"chars", ch}, {"method", momMethod},
                          {"afeTol", momAfeTol}};
            if (momMaxRel) rep.config["maxRelResidual"] = *momMaxRel;
            const auto r = momentReport(Q, bo);
            rep.records.push_back(tagged(toJson(r), "twisted-fourth-moment", "computed"));
            const double rel = std::abs(r.residual) / std::abs(r.prediction);
            if (momMaxRel && !(rel <= *momMaxRel)) rep.fail("relative residual " + g6(rel) + " exceeds " + g6(*momMaxRel));
            std::cout << "brute force " << g6(r.bruteForce.real()) << (r.bruteForce.imag() < 0 ? "" : "+")
                      << g6(r.bruteForce.imag()) << "i, prediction " << g6(r.prediction.real())
                      << (r.prediction.imag() < 0 ? "" : "+") << g6(r.prediction.imag()) << "i, relative residual "
                      << g6(rel) << "\n";
            if (!momCsv.empty()) writeTextFile(momCsv, momentCsv({r}));
            return finish(rep, common);
        };
    });

    // ---- verify-euler
    auto* eulCmd = app.add_subcommand("verify-euler", "Euler-product identities on random configurations");
    int eulTrials = 100, eulDiag = 20;
    double eulTol = 1e-9, eulDiagTol = 1e-6;
    eulCmd->add_option("--trials", eulTrials, "configurations per identity");
    eulCmd->add_option("--diagonal", eulDiag, "diagonal factorization configurations");
    eulCmd->add_option("--tolerance", eulTol, "identity residual bound");
    eulCmd->add_option("--diagonal-tolerance", eulDiagTol, "diagonal factorization residual bound");
    addCommon(eulCmd, common);
    eulCmd->callback([&] {
        action = [&] {
            if (eulTrials < 0 || eulDiag < 0) throw UsageError("counts must be non-negative");
            auto rep = newReport("verify-euler", common);
            rep.config = {{"trials", eulTrials}, {"diagonal", eulDiag}, {"tolerance", eulTol}, {"diagonalTolerance", eulDiagTol}};
            double w = 0.0;
            for (const auto& f : fuzzIdentities(eulTrials, common.seed, common.workers)) {
                const auto& c = f.config;
                rep.records.push_back(tagged(json{{"identity", f.identity}, {"chi", c.ids}, {"l1", c.l1}, {"l2", c.l2},
                                                  {"s", toJson(c.s)}, {"lhs", toJson(f.lhs)}, {"rhs", toJson(f.rhs)},
                                                  {"residual", f.residual}},
                                             "euler-product-identity", "computed"));
                w = std::max(w, f.residual);
                if (!(f.residual < eulTol))
                    rep.fail(f.identity + " at chi " + c.ids[0] + " " + c.ids[1] + " " + c.ids[2] + " " + c.ids[3] +
                             ", l = " + std::to_string(c.l1) + "," + std::to_string(c.l2) + ": " + g6(f.residual));
            }
            double wd = 0.0;
            for (int i = 0; i < eulDiag; ++i) {
                const auto c = randomDiagonalConfig(common.seed * 7919ULL + i);
                const auto r = diagonalFactorization(c.chi, c.l1, c.l2, 2.0, 100000);
                rep.records.push_back(tagged(json{{"identity", "diagonal"}, {"chi", c.ids}, {"l1", c.l1}, {"l2", c.l2},
                                                  {"s", toJson(cplx(2.0))}, {"lhs", toJson(r.series)},
                                                  {"rhs", toJson(r.product)}, {"residual", r.residual}},
                                             "diagonal-factorization", "computed"));
                wd = std::max(wd, r.residual);
                if (!(r.residual < eulDiagTol)) rep.fail("diagonal factorization config " + std::to_string(i) + ": " + g6(r.residual));
            }
            std::cout << "identities: max residual " << g6(w) << "; diagonal factorization: max residual " << g6(wd) << "\n";
            return finish(rep, common);
        };
    });

    // ---- verify-voronoi
    auto* vorCmd = app.add_subcommand("verify-voronoi", "Voronoi summation for one configuration or the grid");
    i64 vorA = 1, vorC = 3;
    std::string vorChi1, vorChi2, vorSupport = "10,20";
    i64 vorDual = 0;
    double vorTol = 1e-9, vorResTol = 1e-5;
    bool vorGrid = false;
    vorCmd->add_option("--a", vorA, "numerator a");
    vorCmd->add_option("--c", vorC, "denominator c");
    vorCmd->add_option("--chi1", vorChi1, "character id m:e1,...");
    vorCmd->add_option("--chi2", vorChi2, "character id m:e1,...");
    vorCmd->add_option("--support", vorSupport, "support A,B of the bump g");
    vorCmd->add_option("--dual-cutoff", vorDual, "fixed dual-sum length (0: adaptive)");
    vorCmd->add_option("--tail-tolerance", vorTol, "target for the dual-sum tail");
    vorCmd->add_option("--residual-tolerance", vorResTol, "largest accepted |LHS - RHS|");
    vorCmd->add_flag("--grid", vorGrid, "run the twelve-configuration grid");
    addCommon(vorCmd, common);
    vorCmd->callback([&] {
        action = [&] {
            auto rep = newReport("verify-voronoi", common);
            std::vector<VoronoiGridEntry> entries;
            if (vorGrid || (vorChi1.empty() && vorChi2.empty())) {
                entries = voronoiGrid();
                rep.config = {{"grid", true}};
            } else {
                if (vorChi1.empty() || vorChi2.empty()) throw UsageError("--chi1 and --chi2 go together");
                const auto sup = parseDoubles(vorSupport, "--support");
                if (sup.size() != 2 || !(0 < sup[0] && sup[0] < sup[1])) throw UsageError("--support needs 0 < A < B");
                VoronoiConfig cfg;
                cfg.a = vorA;
                cfg.c = vorC;
                cfg.chi1 = characterFromId(vorChi1);
                cfg.chi2 = characterFromId(vorChi2);
                cfg.g = BumpFunction(sup[0], sup[1]);
                cfg.dualCutoff = vorDual;
                cfg.tolerance = vorTol;
                cfg.validate();
                entries.push_back({"custom", cfg, false});
                rep.config = {{"a", vorA}, {"c", vorC}, {"chi1", vorChi1}, {"chi2", vorChi2}, {"support", sup},
                              {"dualCutoff", vorDual}, {"tailTolerance", vorTol}, {"residualTolerance", vorResTol}};
            }
            for (const auto& e : entries) {
                const double tol = e.name == "custom" ? vorResTol : (e.reference ? 1e-6 : 1e-5);
                const auto r = verifyVoronoi(e.config);
                rep.records.push_back(tagged(
                    json{{"name", e.name},
                         {"a", e.config.a},
                         {"c", e.config.c},
                         {"chi1", e.config.chi1.id()},
                         {"chi2", e.config.chi2.id()},
                         {"support", {e.config.g.A(), e.config.g.B()}},
                         {"lhs", toJson(r.lhs)},
                         {"rhs", toJson(r.rhs.value)},
                         {"mainTerms", {toJson(r.rhs.mainTerms[0]), toJson(r.rhs.mainTerms[1])}},
                         {"branches", {toJson(r.rhs.branches[0]), toJson(r.rhs.branches[1]), toJson(r.rhs.branches[2])}},
                         {"dualCutoff", r.rhs.dualCutoff},
                         {"tailEstimate", r.rhs.tailEstimate},
                         {"quadError", r.rhs.quadError},
                         {"residual", r.residual},
                         {"tolerance", tol}},
                    "voronoi-summation", "computed"));
                std::cout << e.name << ": residual " << g6(r.residual) << " with " << r.rhs.dualCutoff << " dual terms\n";
                if (!(r.residual < tol)) rep.fail(e.name + ": residual " + g6(r.residual) + " above " + g6(tol));
            }
            return finish(rep, common);
        };
    });

    // ---- cyclotomic
    auto* cycCmd = app.add_subcommand("cyclotomic", "minimum of |1 - (a+b)(c+d)/m - abcd/m^2| over roots of unity");
    int cycOrder = 24;
    std::string cycM = "2,3,4";
    cycCmd->add_option("--max-order", cycOrder, "largest root-of-unity order");
    cycCmd->add_option("--m", cycM, "values of m");
    addCommon(cycCmd, common);
    cycCmd->callback([&] {
        action = [&] {
            if (cycOrder < 1 || cycOrder > 60) throw UsageError("--max-order must be in 1..60");
            const auto ms = parseInts(cycM, "--m");
            for (i64 m : ms)
                if (m < 2) throw UsageError("--m entries must be at least 2");
            auto rep = newReport("cyclotomic", common);
            rep.config = {{"maxOrder", cycOrder}, {"m", ms}};
            double overall = 1e300;
            for (i64 m : ms) {
                const auto r = cyclotomicScan(cycOrder, {m}, common.workers);
                const double floor = 1.0 - 4.0 / m - 1.0 / double(m * m);
                json arg = json::array();
                for (const auto& a : r.argmin) arg.push_back(std::to_string(a.num) + "/" + std::to_string(a.den));
                rep.records.push_back(tagged(json{{"m", m}, {"minModulus", r.minModulus}, {"argmin", arg},
                                                  {"tuples", r.tuples}, {"analyticFloor", floor}},
                                             "cyclotomic-bound", "computed"));
                overall = std::min(overall, r.minModulus);
                std::cout << "m = " << m << ": min " << g6(r.minModulus) << " over " << r.tuples << " tuples\n";
                if (!(r.minModulus > 0)) rep.fail("m = " + std::to_string(m) + ": the minimum vanishes");
                if (floor > 0 && r.minModulus < floor - 1e-12)
                    rep.fail("m = " + std::to_string(m) + ": minimum " + g6(r.minModulus) + " below the floor " + g6(floor));
            }
            std::cout << "scan minimum " << g6(overall) << "\n";
            return finish(rep, common);
        };
    });

    // ---- det-scan
    auto* detCmd = app.add_subcommand("det-scan", "nonvanishing of the sixfold determinant");
    std::string detTuples, detCsv;
    double detThreshold = 1e-8;
    detCmd->add_option("--tuples", detTuples, "D-tuples separated by ';' or '/', e.g. 1,3,5,7/1,5,7,11 (default: the standard list)");
    detCmd->add_option("--threshold", detThreshold, "smallest accepted |det|");
    detCmd->add_option("--csv", detCsv, "write the records as CSV");
    addCommon(detCmd, common);
    detCmd->callback([&] {
        action = [&] {
            std::vector<std::array<i64, 4>> tuples;
            if (detTuples.empty()) {
                tuples = detScanList();
            } else {
                std::string list = detTuples;
                std::replace(list.begin(), list.end(), '/', ';');
                for (const auto& t : split(list, ';')) tuples.push_back(parseFixed<4>(t, "--tuples"));
            }
            auto rep = newReport("det-scan", common);
            json tj = json::array();
            for (const auto& t : tuples) tj.push_back(t);
            rep.config = {{"tuples", tj}, {"threshold", detThreshold}};
            auto recs = detScan(tuples, common.workers);
            sortDetScan(recs);
            double mn = 1e300;
            int vac = 0;
            std::string csv = "D1,D2,D3,D4,chi1,chi2,chi3,chi4,qResidue,vacuous,detModulus,derivedDetModulus,entryMismatch\n";
            for (const auto& r : recs) {
                rep.records.push_back(tagged(toJson(r), "sixfold-determinant", "computed"));
                char buf[512];
                std::snprintf(buf, sizeof buf, "%lld,%lld,%lld,%lld,\"%s\",\"%s\",\"%s\",\"%s\",%lld,%d,%.17g,%.17g,%.17g\n",
                              (long long)r.D[0], (long long)r.D[1], (long long)r.D[2], (long long)r.D[3], r.ids[0].c_str(),
                              r.ids[1].c_str(), r.ids[2].c_str(), r.ids[3].c_str(), (long long)r.qResidue, int(r.vacuous),
                              r.detModulus, r.derivedDetModulus, r.entryMismatch);
                csv += buf;
                if (r.vacuous) {
                    ++vac;
                    std::cout << "vacuous: D = " << r.D[0] << "," << r.D[1] << "," << r.D[2] << "," << r.D[3]
                              << " has no even primitive character tuple\n";
                    continue;
                }
                mn = std::min({mn, r.detModulus, r.derivedDetModulus});
                if (!(r.detModulus > detThreshold) || !(r.derivedDetModulus > detThreshold))
                    rep.fail("D = " + std::to_string(r.D[0]) + "," + std::to_string(r.D[1]) + "," + std::to_string(r.D[2]) +
                             "," + std::to_string(r.D[3]) + " residue " + std::to_string(r.qResidue) + ": |det| " +
                             g6(std::min(r.detModulus, r.derivedDetModulus)));
            }
            std::cout << recs.size() - vac << " combinations, " << vac << " vacuous, min |det| " << g6(mn) << "\n";
            if (!detCsv.empty()) writeTextFile(detCsv, csv);
            return finish(rep, common);
        };
    });

    // ---- mollifier
    auto* molCmd = app.add_subcommand("mollifier", "build a mollifier and check its parameter gates");
    i64 molQ = 101;
    int molK = 6;
    bool molPaper = false, molScaled = false;
    double molT = 0.0;
    molCmd->add_option("--q", molQ, "prime modulus");
    molCmd->add_option("--k", molK, "moment order k");
    auto* fPaper = molCmd->add_flag("--paper-defaults", molPaper, "the asymptotic parameter ladder");
    auto* fScaled = molCmd->add_flag("--scaled", molScaled, "the desk-scale ladder (default)");
    fPaper->excludes(fScaled);
    molCmd->add_option("--t", molT, "height t");
    addCommon(molCmd, common);
    molCmd->callback([&] {
        action = [&] {
            if (molPaper && molScaled) throw UsageError("--paper-defaults and --scaled exclude each other");
            const auto spec = molPaper ? paperDefaultSpec(molQ, molK) : scaledSpec(molQ, molK);
            spec.validate();
            auto rep = newReport("mollifier", common);
            rep.config = {{"q", molQ}, {"k", molK}, {"ladder", molPaper ? "paper-defaults" : "scaled"}, {"t", molT}};
            const auto gates = parameterGates(spec);
            json blocks = json::array();
            for (int j = 0; j <= spec.K; ++j)
                blocks.push_back(json{{"beta", spec.beta[j]}, {"endpoint", spec.endpoint(j)}, {"ell", spec.ell[j]},
                                      {"s", spec.s[j]}, {"primes", spec.blockPrimes(j).size()}});
            json rec{{"lambda", spec.lambda},
                     {"lambdaResidual", std::abs(std::exp(-spec.lambda) - spec.lambda - spec.lambda * spec.lambda / 2)},
                     {"K", spec.K},
                     {"blocks", blocks},
                     {"flags", spec.flags},
                     {"gates", json{{"first", gates.first}, {"perBlock", gates.perBlock}, {"holds", gates.holds},
                                    {"enforced", spec.paperDefaults}}}};
            const auto M = buildMollifier(spec, molT);
            rec["terms"] = M.coeff.size();
            rec["cutoff"] = M.cutoff;
            rep.records.push_back(tagged(rec, "mollifier", "computed"));
            for (const auto& f : spec.flags) std::cout << "flag: " << f << "\n";
            std::cout << "K = " << spec.K << ", " << M.coeff.size() << " terms up to " << M.cutoff << ", gate "
                      << g6(gates.first) << (gates.holds ? " (holds)" : " (fails)") << "\n";
            if (spec.paperDefaults && !gates.holds) rep.fail("parameter gate fails: " + g6(gates.first));
            return finish(rep, common);
        };
    });

    // ---- holder-demo
    auto* holCmd = app.add_subcommand("holder-demo", "Holder inequality for mollified sixth moments");
    i64 holQ = 101;
    int holK = 6;
    std::string holD = "1,5,7,11";
    double holT = 0.0;
    holCmd->add_option("--q", holQ, "prime modulus");
    holCmd->add_option("--k", holK, "moment order k (the demonstration uses 6)");
    holCmd->add_option("--D", holD, "moduli D1,D2,D3,D4");
    holCmd->add_option("--t", holT, "height t");
    addCommon(holCmd, common);
    holCmd->callback([&] {
        action = [&] {
            const auto D = parseFixed<4>(holD, "--D");
            const auto spec = scaledSpec(holQ, holK);
            auto rep = newReport("holder-demo", common);
            rep.config = {{"q", holQ}, {"k", holK}, {"D", D}, {"t", holT}};
            const auto h = holderDemo(spec, D, holT, common.workers);
            rep.records.push_back(tagged(json{{"characters", h.characterCount},
                                              {"nonvanishing", h.nonvanishing},
                                              {"sixthMoments", h.sixthMoments},
                                              {"mixed", toJson(h.mixed)},
                                              {"lhs", h.lhs},
                                              {"rhs", h.rhs},
                                              {"holds", h.holds}},
                                         "holder-inequality", "computed"));
            std::cout << h.nonvanishing << "/" << h.characterCount << " nonvanishing, lhs " << g6(h.lhs) << ", rhs "
                      << g6(h.rhs) << "\n";
            if (!h.holds) rep.fail("lhs " + g6(h.lhs) + " < rhs " + g6(h.rhs));
            return finish(rep, common);
        };
    });

    // ---- suite
    auto* suiteCmd = app.add_subcommand("suite", "run the acceptance criteria");
    std::string level = "desk", only;
    suiteCmd->add_option("--level", level, "suite level")->check(CLI::IsMember({"desk"}));
    suiteCmd->add_option("--only", only, "comma-separated criterion names");
    addCommon(suiteCmd, common);
    suiteCmd->callback([&] {
        action = [&] {
            SuiteOptions so;
            so.seed = common.seed;
            so.workers = common.workers;
            if (!only.empty()) so.only = split(only, ',');
            auto rep = newReport("suite", common);
            rep.config = {{"level", level}, {"only", so.only}};
            runSuite(so, [&](const CriterionResult& r) {
                std::cout << formatCriterionLine(r) << std::endl;
                rep.records.push_back(tagged(json{{"criterion", r.name},
                                                  {"pass", r.pass},
                                                  {"summary", r.summary},
                                                  {"budgetSeconds", r.budgetSeconds},
                                                  {"details", r.details}},
                                             "acceptance-" + r.name, "computed"));
                if (!r.pass) rep.fail(r.name + ": " + r.summary);
                else if (!r.withinBudget()) rep.fail(r.name + ": over its time budget");
            });
            return finish(rep, common);
        };
    });

    try {
        app.parse(argc, argv);
        for (auto* sub : app.get_subcommands()) applyConfig(sub, common.config);
        return action();
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        std::cerr << "math error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
