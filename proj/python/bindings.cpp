// Python bindings. Structured results cross the boundary as JSON text; the
// fourl package turns them into dicts.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fourl/errors.hpp"
#include "fourl/eulerprod.hpp"
#include "fourl/lfun.hpp"
#include "fourl/mollifier.hpp"
#include "fourl/moments.hpp"
#include "fourl/report.hpp"
#include "fourl/suite.hpp"
#include "fourl/voronoi.hpp"

namespace py = pybind11;
using namespace fourl;

namespace {

CharArray charArray(const std::vector<std::string>& ids) {
    if (ids.size() != 4) throw UsageError("need four character ids");
    CharArray c;
    for (int i = 0; i < 4; ++i) c[i] = characterFromId(ids[i]);
    return c;
}

std::string charsJson(i64 m, bool evenPrimitive) {
    json out = json::array();
    for (const auto& c : evenPrimitive ? evenPrimitiveCharacters(m) : characterTable(m))
        out.push_back(json{{"id", c.id()},
                           {"conductor", c.conductor()},
                           {"order", c.order()},
                           {"even", c.isEven()},
                           {"primitive", c.isPrimitive()}});
    return out.dump();
}

std::string momentJson(i64 q, std::array<i64, 4> D, double t, std::array<i64, 2> ell, const std::string& method,
                       double afeTol) {
    const auto Q = makeQuadruple(q, D, t, ell);
    Q.validate();
    BruteForceOptions o;
    if (method == "afe") o.method = MomentMethod::Afe;
    else if (method == "hurwitz") o.method = MomentMethod::Hurwitz;
    else throw UsageError("method must be afe or hurwitz");
    o.afeTolerance = afeTol;
    py::gil_scoped_release nogil;
    return toJson(momentReport(Q, o)).dump();
}

std::string voronoiJson(i64 a, i64 c, const std::string& chi1, const std::string& chi2, double A, double B) {
    VoronoiConfig cfg;
    cfg.a = a;
    cfg.c = c;
    cfg.chi1 = characterFromId(chi1);
    cfg.chi2 = characterFromId(chi2);
    cfg.g = BumpFunction(A, B);
    cfg.validate();
    py::gil_scoped_release nogil;
    const auto r = verifyVoronoi(cfg);
    return json{{"lhs", toJson(r.lhs)},
                {"rhs", toJson(r.rhs.value)},
                {"residual", r.residual},
                {"dualCutoff", r.rhs.dualCutoff},
                {"tailEstimate", r.rhs.tailEstimate}}
        .dump();
}

std::string criterionJson(const std::string& name, std::uint64_t seed) {
    SuiteOptions o;
    o.seed = seed;
    py::gil_scoped_release nogil;
    const auto r = runCriterion(name, o);
    return json{{"name", r.name}, {"pass", r.pass}, {"summary", r.summary}, {"details", r.details}}.dump();
}

}  // namespace

PYBIND11_MODULE(_fourl, m) {
    m.doc() = "Twisted fourth moments of Dirichlet L-functions: numerical checks";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);

    m.attr("REPORT_SCHEMA") = kReportSchema;

    m.def("chars_json", &charsJson, py::arg("m"), py::arg("even_primitive") = false);
    m.def("gauss_sum", [](const std::string& id) { return gaussSum(characterFromId(id)); }, py::arg("chi"));
    m.def("character_value", [](const std::string& id, i64 n) { return characterFromId(id)(n); }, py::arg("chi"),
          py::arg("n"));
    m.def("lvalue", [](const std::string& id, cplx s) { return lvalue(characterFromId(id), s).value; }, py::arg("chi"),
          py::arg("s"));
    m.def("fe_residual", [](const std::string& id, cplx s) { return feResidual(characterFromId(id), s); },
          py::arg("chi"), py::arg("s"));
    m.def("hurwitz_zeta", &hurwitzZeta, py::arg("s"), py::arg("a"));
    m.def("moment_json", &momentJson, py::arg("q"), py::arg("D"), py::arg("t") = 0.0,
          py::arg("ell") = std::array<i64, 2>{1, 1}, py::arg("method") = "hurwitz", py::arg("afe_tol") = 1e-9);
    m.def("verify_identity",
          [](const std::vector<std::string>& ids, i64 l1, i64 l2, cplx s) {
              return verifyIdentity(charArray(ids), l1, l2, s).residual;
          },
          py::arg("chi"), py::arg("l1"), py::arg("l2"), py::arg("s"));
    m.def("verify_second_identity",
          [](const std::vector<std::string>& ids, i64 l1, i64 l2) {
              return verifySecondIdentity(charArray(ids), l1, l2).residual;
          },
          py::arg("chi"), py::arg("l1"), py::arg("l2"));
    m.def("cyclotomic_min",
          [](int maxOrder, const std::vector<i64>& ms) {
              py::gil_scoped_release nogil;
              return cyclotomicScan(maxOrder, ms).minModulus;
          },
          py::arg("max_order"), py::arg("m"));
    m.def("voronoi_json", &voronoiJson, py::arg("a"), py::arg("c"), py::arg("chi1"), py::arg("chi2"),
          py::arg("A") = 10.0, py::arg("B") = 20.0);
    m.def("solve_lambda", &solveLambda);
    m.def("criteria", [] {
        std::vector<std::string> names;
        for (const auto& c : suiteCriteria()) names.push_back(c.name);
        return names;
    });
    m.def("criterion_json", &criterionJson, py::arg("name"), py::arg("seed") = 1);
}
