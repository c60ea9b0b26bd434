#pragma once
#include <complex>
#include <string>
#include <vector>

#include "fourl/chargroup.hpp"
#include "fourl/special.hpp"

namespace fourl {

enum class LMethod { Hurwitz, Afe, Euler, Digamma };
std::string methodName(LMethod m);

struct LValue {
    cplx s;
    std::string character;
    cplx value;
    LMethod method;
    double error;
};

// Euler-Maclaurin continuation of sum_{n>=0} (n + a)^{-s}, 0 < a <= 1.
cplx hurwitzZeta(cplx s, double a);

// L(s, chi) = m^{-s} sum_a chi(a) zeta(s, a/m); L(1, chi) through digamma values.
LValue lvalue(const DirichletCharacter& chi, cplx s);
// -(1/m) sum_a chi(a) psi(a/m), chi non-principal.
cplx lvalueAt1(const DirichletCharacter& chi);
// Truncated Euler product for Re s > 1, with a tail bound in `error`.
LValue lvalueEuler(const DirichletCharacter& chi, cplx s, i64 primeCutoff);

// Shares the Hurwitz values zeta(s, a/M), a = 1..M, across all characters mod M.
class HurwitzTable {
public:
    HurwitzTable(i64 modulus, cplx s);
    // L(s, chi) for chi mod the table's modulus (or a divisor, via induction).
    cplx operator()(const DirichletCharacter& chi) const;
    // L(s, chi) where chi(a) = values[a mod M].
    cplx fromValues(const std::vector<cplx>& values) const;

private:
    i64 M_;
    cplx s_;
    cplx scale_;
    std::vector<cplx> z_;
};

// Lambda(1/2 + s, chi) = (m/pi)^{s/2} Gamma((1/2 + s)/2) L(1/2 + s, chi), chi even primitive, m > 1.
cplx completedLambda(const DirichletCharacter& chi, cplx s);
double feResidual(const DirichletCharacter& chi, cplx s);

// epsilon = chi1 chi2 conj(chi3 chi4)(q) eps(chi1) eps(chi2) eps(conj chi3) eps(conj chi4)
cplx rootNumber(const Quadruple& Q);

// L(1/2+it, chi chi1) L(1/2+it, chi chi2) L(1/2-it, conj(chi chi3)) L(1/2-it, conj(chi chi4))
// from Hurwitz values.
cplx directProductValue(const Quadruple& Q, const DirichletCharacter& chi);
// The same for many characters mod q, sharing the Hurwitz tables.
std::vector<cplx> directProductValues(const Quadruple& Q, const std::vector<DirichletCharacter>& chars);

struct AfeOptions {
    double tolerance = 1e-12;   // V-decay level that fixes the cutoff
    double maxCutoff = 6.0e7;   // refuse larger mn ranges
    double sigma = 1.0;         // contour for V
};

// The two-sum approximate functional equation for the product of four L-values.
// Coefficients are binned by the residue of m * n^{-1} mod q, so one pass over
// all (m, n) with mn <= cutoff serves every character mod q.
class AfeEngine {
public:
    explicit AfeEngine(const Quadruple& Q, AfeOptions opt = {});
    i64 cutoff() const { return K_; }
    double decayPoint() const { return X0_; }
    const std::vector<cplx>& buckets() const { return W_; }
    // First sum for chi: sum_r chi(r) W[r].
    cplx firstSum(const DirichletCharacter& chi) const;
    cplx value(const DirichletCharacter& chi) const;
    // Dual-sum coefficient (D1D2/D3D4)^{-it} eps chi(D1 D2) conj(chi)(D3 D4).
    cplx dualFactor(const DirichletCharacter& chi) const;
    // Bound on the part of the sums beyond the cutoff, from the V envelope.
    double tailEstimate() const { return tail_; }

private:
    Quadruple Q_;
    AfeOptions opt_;
    double X0_ = 0.0;
    i64 K_ = 0;
    double tail_ = 0.0;
    cplx eps_;
    std::vector<cplx> W_;
};

cplx afeProductValue(const Quadruple& Q, const DirichletCharacter& chi, AfeOptions opt = {});

// Solution of exp(-lambda) = lambda + lambda^2/2 in (0, 1).
double logBoundLambda();
struct LogBoundGap {
    double rhs;
    double logAbsL;
    double gap;  // rhs - log|L(1/2+it, chi)|
};
LogBoundGap grhLogBoundGap(const DirichletCharacter& chi, double t, double x);

}  // namespace fourl
