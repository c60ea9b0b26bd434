#pragma once
#include <array>
#include <complex>
#include <string>
#include <vector>

#include "fourl/chargroup.hpp"
#include "fourl/eulerprod.hpp"
#include "fourl/lfun.hpp"

namespace fourl {

// Even primitive characters mod a prime q > 3: phi(q)/2 - 1 of them.
std::vector<DirichletCharacter> enumerateEvenPrimitive(i64 q);
i64 phiPlus(i64 q);

// sum^+ chi(m) conj chi(n) against (phi(q)/2) 1_{m = +-n} - 1 for all units m, n.
struct OrthogonalityResult {
    i64 q = 0;
    double maxError = 0.0;
    bool exact = false;  // every sum rounds to the predicted integer
};
OrthogonalityResult checkOrthogonality(i64 q);

enum class MomentMethod { Afe, Hurwitz };
std::string momentMethodName(MomentMethod m);

struct BruteForceOptions {
    MomentMethod method = MomentMethod::Afe;
    double afeTolerance = 1e-12;
    double maxCutoff = 6.0e7;
    int workers = 0;
};

struct BruteForceResult {
    cplx value;
    int characterCount = 0;
    MomentMethod method = MomentMethod::Afe;
    double tolerance = 0.0;
    i64 cutoff = 0;  // AFE length, 0 for the Hurwitz path
};

// I(l1, l2): average over even primitive chi mod q of the four central values times chi(l1) conj chi(l2).
BruteForceResult bruteForceMoment(const Quadruple& Q, const BruteForceOptions& opt = {});

// First AFE sum of I averaged over characters, and the same from the congruence form
// (phi(q)/2) 1_{m l1 = +- n l2} - 1.
struct OrthogonalitySplit {
    cplx characterAverage;
    cplx congruenceForm;
};
OrthogonalitySplit orthogonalitySplit(const Quadruple& Q, double afeTolerance = 1e-10);

// L(1, a conj b); ConfluentCharacters when a conj b is principal.
cplx lOneCross(const DirichletCharacter& a, const DirichletCharacter& b);

// M_{a,b,c,d}(l1, l2) = A(l1~, l2~)/(l1~^{1/2-it} l2~^{1/2+it}) L(1, a c~) L(1, a d~) L(1, b c~) L(1, b d~).
cplx mainTermM(const CharArray& abcd, i64 l1, i64 l2, double t);

struct SixTerms {
    std::array<cplx, 6> terms{};
    cplx sum;
    static const std::array<std::string, 6>& labels();
};
// Diagonal term plus the five swap terms of the twisted moment theorem.
SixTerms sixTermPrediction(const Quadruple& Q);

struct MomentReport {
    Quadruple quadruple;
    cplx bruteForce;
    cplx diagonalTerm;
    std::array<cplx, 5> swapTerms{};
    cplx prediction;
    cplx residual;
    double afeTolerance = 0.0;
    int characterCount = 0;
    std::string method;
};
MomentReport momentReport(const Quadruple& Q, const BruteForceOptions& opt = {});

// R(a, b, conj c, conj d) = L(1, a c~) L(1, a d~) L(1, b c~) L(1, b d~) / L(2, a b c~ d~).
cplx rFactor(const DirichletCharacter& a, const DirichletCharacter& b, const DirichletCharacter& c,
             const DirichletCharacter& d);
// The six-term untwisted formula (l1 = l2 = 1).
cplx untwistedPrediction(const Quadruple& Q);
// Coefficients of the six R-values of untwistedPrediction, in display order.
std::array<cplx, 6> untwistedCoefficients(const CharArray& chi, i64 qResidue);

// ---- Appendix matrix ----
using Matrix6 = std::array<std::array<cplx, 6>, 6>;
enum class MatrixForm { Literal, Derived };
// Columns: R(1,2,3~,4~), conj, R(3,2,1~,4~), conj, R(4,2,3~,1~), conj.
// Literal: entries as displayed. Derived: rows rebuilt from untwistedCoefficients of the
// swapped quadruples (identity, 1<->3 2<->4, 1<->3, 2<->4, 1<->4, 2<->3).
Matrix6 sixfoldMatrix(const CharArray& chi, i64 qResidue, MatrixForm form = MatrixForm::Literal);
cplx determinant6(const Matrix6& m);
// |det| with the entries rebuilt from exact angles in quadruple precision.
double determinantModulusQuad(const CharArray& chi, i64 qResidue, MatrixForm form);

struct DetScanRecord {
    std::array<i64, 4> D{};
    std::array<std::string, 4> ids;
    i64 qResidue = 0;
    double detModulus = 0.0;         // literal matrix
    double derivedDetModulus = 0.0;  // derived matrix
    double entryMismatch = 0.0;      // max |literal - derived| entry
    bool escalated = false;
    bool vacuous = false;
};
// The finite list of small D-tuples checked by hand: (1,3,5,D4 <= 37), (1,3,7,D4 <= 19), (1,5,7,11).
std::vector<std::array<i64, 4>> detScanList();
// One record per (tuple, character tuple, unit residue mod D1D2D3D4); a single vacuous record for
// tuples with no even primitive character tuple.
std::vector<DetScanRecord> detScan(const std::vector<std::array<i64, 4>>& tuples, int workers = 0);

}  // namespace fourl
