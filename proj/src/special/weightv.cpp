#include <cmath>
#include <numbers>

#include "fourl/errors.hpp"
#include "fourl/special.hpp"

namespace fourl {

namespace {

constexpr double kLeftSwitch = 1e-2;  // below this x the shifted contour is used
constexpr double kMaxAbsLog = 45.0;   // |log x| range the step size is designed for

std::vector<cplx> buildNodes(const WeightV& v, double sigma, double tol, double* hOut) {
    const double pi = std::numbers::pi;
    const double y = 0.9 * std::fabs(sigma);
    const double h = 2 * pi * y / (-std::log(tol) + y * kMaxAbsLog);
    const double cap = std::max(10.0, std::fabs(v.t()) + 10.0) * (1.0 + std::sqrt(std::fabs(std::log(tol))));
    std::vector<cplx> w;
    int small = 0;
    double w0 = 0.0;
    for (int k = 0;; ++k) {
        const double tau = k * h;
        if (tau > cap) throw QuadratureError("weightV: integrand did not decay inside the truncation range", 0.0, 0.0);
        const cplx s(sigma, tau);
        const cplx val = WeightV::G(s) * v.g(s) / s;
        w.push_back(val);
        if (k == 0) w0 = std::abs(val);
        if (std::abs(val) < 1e-3 * tol * std::max(1.0, w0)) {
            if (++small >= 4) break;
        } else {
            small = 0;
        }
    }
    *hOut = h;
    return w;
}

double contourSum(const std::vector<cplx>& w, double h, double sigma, double x) {
    const double lx = std::log(x);
    // x^{-i tau_k} by recurrence
    const cplx step = std::polar(1.0, -h * lx);
    cplx ph = 1.0;
    double acc = w[0].real();
    double tail = 0.0;
    for (std::size_t k = 1; k < w.size(); ++k) {
        ph *= step;
        if (k % 64 == 0) ph = std::polar(1.0, -static_cast<double>(k) * h * lx);
        tail += (w[k] * ph).real();
    }
    acc += 2.0 * tail;
    return h / (2 * std::numbers::pi) * acc * std::exp(-sigma * lx);
}

}  // namespace

cplx WeightV::G(cplx s) { return std::exp(s * s); }

cplx WeightV::g(cplx s) const {
    const cplx it(0.0, t_);
    return std::exp(2.0 * (logGamma((0.5 + it + s) / 2.0) + logGamma((0.5 - it + s) / 2.0)) - logNorm_);
}

WeightV::WeightV(double t, double sigma, double tolerance) : t_(t), sigma_(sigma), tol_(tolerance) {
    if (!(sigma > 0.0)) throw UsageError("weightV: contour must lie to the right of 0");
    if (!(tolerance > 0.0)) throw UsageError("weightV: tolerance must be positive");
    const cplx it(0.0, t);
    logNorm_ = 2.0 * (logGamma((0.5 + it) / 2.0) + logGamma((0.5 - it) / 2.0));
    w_ = buildNodes(*this, sigma_, tol_, &h_);
    wLeft_ = buildNodes(*this, -sigmaLeft_, tol_, &hLeft_);
}

double WeightV::operator()(double x) const {
    if (!(x > 0.0)) throw UsageError("weightV: x must be positive");
    if (x < kLeftSwitch) return 1.0 + contourSum(wLeft_, hLeft_, -sigmaLeft_, x);
    return contourSum(w_, h_, sigma_, x);
}

double WeightV::decayPoint(double level) const {
    double x = 1.0;
    int below = 0;
    double first = 0.0;
    while (x < 1e14) {
        if (std::fabs((*this)(x)) < level) {
            if (below == 0) first = x;
            if (++below >= 40) return first;
        } else {
            below = 0;
        }
        x *= 1.02;
    }
    throw MathError("weightV: no decay point below 1e14");
}

// ---------------------------------------------------------------- table

WeightVTable::WeightVTable(WeightV v, double xmin, double xmax, double segment, int degree)
    : v_(std::move(v)), umin_(std::log(xmin)), seg_(segment), deg_(degree) {
    const int nseg = static_cast<int>(std::ceil((std::log(xmax) - umin_) / seg_));
    umax_ = umin_ + nseg * seg_;
    const int n = deg_ + 1;
    coef_.assign(static_cast<std::size_t>(nseg) * n, 0.0);
    std::vector<double> fv(n);
    const double pi = std::numbers::pi;
    for (int s = 0; s < nseg; ++s) {
        const double a = umin_ + s * seg_;
        for (int j = 0; j < n; ++j) {
            const double xj = std::cos(pi * (j + 0.5) / n);
            fv[j] = v_(std::exp(a + 0.5 * seg_ * (xj + 1.0)));
        }
        for (int k = 0; k < n; ++k) {
            double c = 0.0;
            for (int j = 0; j < n; ++j) c += fv[j] * std::cos(pi * k * (j + 0.5) / n);
            coef_[static_cast<std::size_t>(s) * n + k] = c * 2.0 / n;
        }
        // check between the nodes
        for (double z : {-0.9, 0.37, 0.95}) {
            const double x = std::exp(a + 0.5 * seg_ * (z + 1.0));
            maxErr_ = std::max(maxErr_, std::fabs((*this)(x) - v_(x)));
        }
    }
}

double WeightVTable::operator()(double x) const {
    const double u = std::log(x);
    if (u < umin_ || u >= umax_) return v_(x);
    const int n = deg_ + 1;
    const int s = static_cast<int>((u - umin_) / seg_);
    const double z = 2.0 * (u - umin_ - s * seg_) / seg_ - 1.0;
    const double* c = &coef_[static_cast<std::size_t>(s) * n];
    // Clenshaw
    double b1 = 0.0, b2 = 0.0;
    for (int k = n - 1; k >= 1; --k) {
        const double b0 = 2.0 * z * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return z * b1 - b2 + 0.5 * c[0];
}

}  // namespace fourl
