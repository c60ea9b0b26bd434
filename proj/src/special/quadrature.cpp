#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "fourl/errors.hpp"
#include "fourl/special.hpp"

namespace fourl {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double magnitude(double v) { return std::fabs(v); }
double magnitude(cplx v) { return std::abs(v); }

template <class T>
struct Interval {
    double a, b;
    T value;
    double error;
};

template <class T, class F>
Interval<T> kronrod(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T fc = f(c);
    T k = fc * kWgk[7];
    T g = fc * kWg[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        T s = f(c - dx) + f(c + dx);
        k += s * kWgk[i];
        if (i % 2 == 1) g += s * kWg[i / 2];
    }
    return {a, b, k * h, magnitude((k - g) * h)};
}

template <class T>
QuadResult<T> adaptive(const std::function<T(double)>& f0, double a, double b, double tol, int maxIntervals) {
    if (a == b) return {};
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    // Map infinite ranges onto finite ones.
    std::function<T(double)> f;
    double lo = a, hi = b;
    if (std::isinf(a) && std::isinf(b)) {
        f = [&f0](double u) {
            const double d = 1.0 - u * u;
            return f0(u / d) * ((1.0 + u * u) / (d * d));
        };
        lo = -1.0;
        hi = 1.0;
    } else if (std::isinf(b)) {
        f = [&f0, a](double u) {
            const double d = 1.0 - u;
            return f0(a + u / d) * (1.0 / (d * d));
        };
        lo = 0.0;
        hi = 1.0;
    } else if (std::isinf(a)) {
        f = [&f0, b](double u) {
            const double d = 1.0 - u;
            return f0(b - u / d) * (1.0 / (d * d));
        };
        lo = 0.0;
        hi = 1.0;
    } else {
        f = f0;
    }

    auto cmp = [](const Interval<T>& x, const Interval<T>& y) {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;
    };
    std::priority_queue<Interval<T>, std::vector<Interval<T>>, decltype(cmp)> heap(cmp);
    auto first = kronrod<T>(f, lo, hi);
    heap.push(first);
    double totalErr = first.error;
    int evals = 15;
    int count = 1;
    while (totalErr > tol && count < maxIntervals) {
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push(worst);
            break;
        }
        auto l = kronrod<T>(f, worst.a, mid), r = kronrod<T>(f, mid, worst.b);
        evals += 30;
        totalErr += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++count;
    }
    // Re-add in a fixed order so the result is independent of heap layout.
    std::vector<Interval<T>> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    T value{};
    double err = 0.0;
    for (const auto& iv : all) {
        value += iv.value;
        err += iv.error;
    }
    if (!(err <= tol) || !std::isfinite(magnitude(value))) {
        std::ostringstream os;
        os << "integrate: error estimate " << err << " above tolerance " << tol << " after " << count
           << " intervals";
        throw QuadratureError(os.str(), magnitude(value), err);
    }
    return {value * sign, err, evals};
}

}  // namespace

QuadResult<double> integrate(const std::function<double(double)>& f, double a, double b, double tolerance,
                             int maxIntervals) {
    return adaptive<double>(f, a, b, tolerance, maxIntervals);
}

QuadResult<cplx> integrateComplex(const std::function<cplx(double)>& f, double a, double b, double tolerance,
                                  int maxIntervals) {
    return adaptive<cplx>(f, a, b, tolerance, maxIntervals);
}

// ---------------------------------------------------------------- bumps

BumpFunction::BumpFunction(double A, double B, Shape shape) : A_(A), B_(B), shape_(shape) {
    if (!(A > 0.0 && B > A)) throw UsageError("bump support must satisfy 0 < A < B");
    if (shape_ == Shape::Literal) {
        const double w = 0.5 * (B - A);
        literalScale_ = std::exp(1.0 / (w * w));
    }
    // Crude derivative bounds from repeated central differences on a grid.
    const int n = 4000;
    const double h = (B - A) / n;
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = (*this)(A + i * h);
    derivBounds_.assign(5, 0.0);
    for (int k = 0; k <= 4; ++k) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::fabs(x));
        derivBounds_[k] = m;
        std::vector<double> d(v.size(), 0.0);
        for (std::size_t i = 1; i + 1 < v.size(); ++i) d[i] = (v[i + 1] - v[i - 1]) / (2 * h);
        v.swap(d);
    }
}

double BumpFunction::operator()(double x) const {
    if (zero_ || !(x > A_ && x < B_)) return 0.0;
    if (shape_ == Shape::Literal) return literalScale_ * std::exp(-1.0 / ((x - A_) * (B_ - x)));
    const double u = (2.0 * x - A_ - B_) / (B_ - A_);
    const double d = 1.0 - u * u;
    if (d <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / d);
}

double BumpFunction::integral() const {
    if (zero_) return 0.0;
    return integrate([this](double x) { return (*this)(x); }, A_, B_, 1e-14 * (B_ - A_)).value;
}

}  // namespace fourl
