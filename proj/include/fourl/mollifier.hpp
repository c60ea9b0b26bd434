#pragma once
#include <map>
#include <string>
#include <vector>

#include "fourl/chargroup.hpp"

namespace fourl {

// Root of exp(-lambda) = lambda + lambda^2/2 in (0, 1).
double solveLambda();

struct MollifierSpec {
    i64 q = 101;
    int k = 2;
    int K = 0;
    std::vector<double> beta;  // beta_0 .. beta_K
    std::vector<int> ell;      // Omega caps per block
    std::vector<int> s;        // even exponents s_j
    double lambda = 0.0;
    bool paperDefaults = false;
    std::vector<std::string> flags;  // deviations applied while building the spec

    // q^{beta_j}
    double endpoint(int j) const;
    // Primes in I_j = (q^{beta_{j-1}}, q^{beta_j}], I_0 = (1, q^{beta_0}].
    std::vector<i64> blockPrimes(int j) const;
    // Throws UsageError on inconsistent sizes, nonincreasing beta or negative caps.
    void validate() const;
};

// beta_j = e^j/(log log q)^5 with beta_K = c just below the admissible bound. At desk-scale q
// this ladder is degenerate; the spec is built anyway and flagged.
MollifierSpec paperDefaultSpec(i64 q, int k);
// q^{beta_0} = 11, ratio e between steps, q^{beta_K} <= 10^4. s_j and ell_j follow the
// usual formulas and are floored at 2.
MollifierSpec scaledSpec(i64 q, int k);
// Explicit parameters; s_j defaults to 2 when empty.
MollifierSpec customSpec(i64 q, int k, std::vector<double> beta, std::vector<int> ell, std::vector<int> s = {});

// The bound on beta_K for the given k.
double conditionC(int k);

struct GateReport {
    double first = 0.0;                 // (k+2) sum ell_r beta_r
    std::vector<double> perBlock;       // (k+2) sum_{r<=j} + k sum_{r>j} + 2 s_{j+1} beta_{j+1}, j < K
    bool holds = false;
};
GateReport parameterGates(const MollifierSpec& spec);

// a(p; u) and b(p; j); UsageError when p is beyond q^{beta_u} (q^{beta_j/2} for b).
double smoothingA(i64 p, int u, const MollifierSpec& spec);
double smoothingB(i64 p, int j, const MollifierSpec& spec);
// a(n; u) extended completely multiplicatively.
double smoothingAn(i64 n, int u, const MollifierSpec& spec);

struct NuAlpha {
    double nu;
    double alpha;
};
// nu(p^a) = 1/a!, alpha_k(n; ell) over k-fold factorizations with Omega(n_i) <= ell (ell < 0: no cap).
NuAlpha nuAlpha(i64 n, int k, int ell);

struct DirichletPolynomial {
    std::map<i64, double> coeff;  // n -> c(n); coefficients are real
    std::map<i64, std::vector<i64>> blocks;  // n -> its factor in each block
    i64 cutoff = 0;
};

// M_j: squarefree n with primes in I_j, Omega(n) <= ell_j, c(n) = mu(n) a(n; K) nu(n).
DirichletPolynomial blockPolynomial(const MollifierSpec& spec, int j);
// M = prod_j M_j. t does not enter the coefficients; MathError when the support would overflow.
DirichletPolynomial buildMollifier(const MollifierSpec& spec, double t = 0.0);
// Coefficients a(n; K) alpha_k(n; ell_j) of M_j^k.
DirichletPolynomial blockPowerExpansion(const MollifierSpec& spec, int j, int k);
// sum c(n) chi(n) n^{-1/2-it}
cplx evaluateM(const DirichletPolynomial& poly, const DirichletCharacter& chi, double t);

cplx primeSumP(const DirichletCharacter& chi, const MollifierSpec& spec, int j, int u, double t);
// sum_{s <= ell} x^s/s!
double truncExp(int ell, double x);
double factorD(const DirichletCharacter& chi, const MollifierSpec& spec, int j, int k, double t);
double factorS(const DirichletCharacter& chi, const MollifierSpec& spec, int j, int k, double t);

struct PowerIdentityResult {
    cplx expanded;
    cplx power;
    double residual = 0.0;
};
PowerIdentityResult verifyPowerExpansion(const MollifierSpec& spec, int j, int k, const DirichletCharacter& chi,
                                         double t);

// Average over even primitive chi mod q of |L(1/2+it, chi psi) M(1/2+it, chi psi)|^k.
double mollifiedMomentAverage(const MollifierSpec& spec, const DirichletCharacter& psi, int k, double t,
                              int workers = 0);

struct HolderDemo {
    i64 q = 0;
    int k = 6;
    int characterCount = 0;
    int nonvanishing = 0;
    std::array<double, 4> sixthMoments{};  // sum |LM(chi chi_j)|^6
    cplx mixed;                             // sum prod LM(chi chi_1) LM(chi chi_2) conj(LM(chi chi_3) LM(chi chi_4))
    double lhs = 0.0;                       // N^2 prod sixthMoments
    double rhs = 0.0;                       // |mixed|^6
    bool holds = false;
};
// chi_j: the first even primitive character mod each D_j.
HolderDemo holderDemo(const MollifierSpec& spec, std::array<i64, 4> D, double t, int workers = 0);

}  // namespace fourl
