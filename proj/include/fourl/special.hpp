#pragma once
#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace fourl {

using cplx = std::complex<double>;

// Principal branch of log Gamma, continuous off the negative real axis.
// Throws MathError at the poles z = 0, -1, -2, ...
cplx logGamma(cplx z);
double digamma(double x);  // x > 0

enum class BesselKind { J0, Y0, K0 };
// Throws UsageError for x <= 0.
double bessel(BesselKind kind, double x);
double besselJ0(double x);
double besselY0(double x);
double besselK0(double x);

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod (7/15) on [a, b]; either end may be infinite.
// Deterministic: the same f and arguments always visit the same nodes.
// Throws QuadratureError if the error estimate stays above tolerance
// after maxIntervals subdivisions.
QuadResult<double> integrate(const std::function<double(double)>& f, double a, double b,
                             double tolerance, int maxIntervals = 4000);
QuadResult<cplx> integrateComplex(const std::function<cplx(double)>& f, double a, double b,
                                  double tolerance, int maxIntervals = 4000);

// Smooth function supported on [A, B] with peak value 1 at the midpoint.
//   Standard:  exp(1 - 1/(1 - u^2)), u = (2x - A - B)/(B - A)
//   Literal:   exp(-1/((x - A)(B - x))), divided by its midpoint value
class BumpFunction {
public:
    enum class Shape { Standard, Literal };
    BumpFunction() = default;
    BumpFunction(double A, double B, Shape shape = Shape::Standard);

    double operator()(double x) const;
    double A() const { return A_; }
    double B() const { return B_; }
    Shape shape() const { return shape_; }
    bool isZero() const { return zero_; }
    // Integral over the support.
    double integral() const;
    // max |g^(k)| for k = 0..4, estimated on a fine grid by finite differences.
    const std::vector<double>& derivativeBounds() const { return derivBounds_; }

    static BumpFunction zero() {
        BumpFunction g;
        g.zero_ = true;
        return g;
    }

private:
    double A_ = 1.0, B_ = 2.0;
    Shape shape_ = Shape::Standard;
    bool zero_ = false;
    double literalScale_ = 1.0;
    std::vector<double> derivBounds_;
};

// The weight V(x; t) of the approximate functional equation with G(s) = exp(s^2):
//   V(x; t) = (1/2 pi i) int_{(sigma)} G(s) g(s, t) x^{-s} ds / s.
// V is real for real t. The contour integral is a trapezoid sum on
// Re s = sigma whose nodes are fixed at construction. For x < 1 the contour
// is moved to Re s = -1/4 and the residue 1 at s = 0 is added back.
class WeightV {
public:
    explicit WeightV(double t, double sigma = 1.0, double tolerance = 1e-15);

    double operator()(double x) const;
    double t() const { return t_; }
    double sigma() const { return sigma_; }
    double tolerance() const { return tol_; }
    std::size_t nodeCount() const { return w_.size(); }
    double step() const { return h_; }

    static cplx G(cplx s);
    cplx g(cplx s) const;  // gamma ratio, g(0, t) = 1
    // Smallest x >= 1 (on a ratio-1.02 grid) past which |V| stays below level.
    double decayPoint(double level) const;

private:
    double t_, sigma_, tol_, h_ = 0.0;
    double sigmaLeft_ = 0.25, hLeft_ = 0.0;
    cplx logNorm_;
    std::vector<cplx> w_;      // G g / s at sigma + i k h, k >= 0
    std::vector<cplx> wLeft_;  // same on Re s = -sigmaLeft, used for x < 1
};

// Piecewise Chebyshev interpolant of V in log x for fast bulk evaluation.
// Outside [xmin, xmax] the exact quadrature is used.
class WeightVTable {
public:
    WeightVTable(WeightV v, double xmin, double xmax, double segment = 0.25, int degree = 18);
    double operator()(double x) const;
    double maxError() const { return maxErr_; }  // measured at segment midpoints between nodes

private:
    WeightV v_;
    double umin_, umax_, seg_;
    int deg_;
    std::vector<double> coef_;
    double maxErr_ = 0.0;
};

}  // namespace fourl
