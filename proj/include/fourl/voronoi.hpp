#pragma once
#include <array>
#include <string>
#include <vector>

#include "fourl/chargroup.hpp"
#include "fourl/special.hpp"

namespace fourl {

struct VoronoiConfig {
    i64 a = 1;
    i64 c = 1;
    DirichletCharacter chi1, chi2;  // primitive, squarefree coprime moduli
    BumpFunction g{10.0, 20.0};
    i64 dualCutoff = 0;          // 0: grow until the fitted tail is below tolerance
    double quadTolerance = 1e-12;
    double tolerance = 1e-9;     // target for the dual-sum tail
    i64 maxDualCutoff = 4000000;

    // Throws UsageError naming the violated condition.
    void validate() const;
};

// sum_n (chi1 * chi2)(n) e(an/c) g(n)
cplx lhsSum(const VoronoiConfig& cfg);

// D_j' = D_j/(c, D_j) and chi_j = chi_j' chi_j'' with chi_j' mod D_j', chi_j'' mod (c, D_j).
struct VoronoiSplit {
    i64 D1p = 1, D2p = 1, g1 = 1, g2 = 1;
    DirichletCharacter chi1p, chi1pp, chi2p, chi2pp;
};
VoronoiSplit voronoiSplit(const VoronoiConfig& cfg);

// eps(chi1') eps(chi2') chi1' chi2'(c) chi1''(-conj(a D2')) chi2''(-conj(a D1')) / (c sqrt(D1' D2')).
cplx voronoiPrefactor(const VoronoiConfig& cfg);
// The same from raw Gauss sums and CRT lifts computed here, for the consistency check.
cplx voronoiPrefactorDirect(const VoronoiConfig& cfg);

struct RhsValue {
    cplx value;
    std::array<cplx, 2> mainTerms{};  // the D1 | c and D2 | c terms, zero when the indicator is off
    cplx dual;                        // prefactor times T
    std::array<cplx, 3> branches{};   // the Y0, J0 and K0 parts of dual
    i64 dualCutoff = 0;
    double tailEstimate = 0.0;
    double quadError = 0.0;
    double decayRate = 0.0;  // kappa in the fitted envelope C exp(-kappa n^{1/4})
};
// Throws UsageError when D1 = D2 = 1 (L(1) pole) and MathError when the tail
// cannot be brought below tolerance within maxDualCutoff.
RhsValue rhsValue(const VoronoiConfig& cfg);

struct VoronoiResult {
    cplx lhs;
    RhsValue rhs;
    double residual = 0.0;
    double budget = 0.0;  // max(1e-6, 10 (quadrature + tail))
    bool pass = false;
};
VoronoiResult verifyVoronoi(const VoronoiConfig& cfg);

struct VoronoiGridEntry {
    std::string name;
    VoronoiConfig config;
    bool reference = false;  // held to 1e-6 instead of 1e-5
};
// Twelve configurations varying c, D1, D2, the parity of chi1 chi2 and the support of g.
std::vector<VoronoiGridEntry> voronoiGrid();

// First even or odd primitive character mod m (m = 1 gives the trivial character).
DirichletCharacter primitiveCharacter(i64 m, bool odd = false, int index = 0);

}  // namespace fourl
