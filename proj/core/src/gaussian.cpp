#include "kmstab/gaussian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kmstab {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
} // namespace

double normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double normal_tail(double x) {
    return 0.5 * std::erfc(x * kInvSqrt2);
}

double normal_interval_mass(double a, double b) {
    if (!(a <= b)) throw std::invalid_argument("normal_interval_mass: a > b");
    // When both endpoints are positive, work with upper tails so that the
    // difference is between two small numbers of the same scale.
    if (a > 0.0) return normal_tail(a) - normal_tail(b);
    return normal_cdf(b) - normal_cdf(a);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must lie in (0, 1)");
    const bool flip = p > 0.5;
    if (flip) p = 1.0 - p;

    // p <= 1/2, answer in [-38, 0]. Crude start, then safeguarded Newton.
    double lo = -38.0, hi = 0.0;
    double x = (p > 0.3) ? 0.0 : -std::sqrt(-2.0 * std::log(2.0 * p));
    for (int it = 0; it < 200; ++it) {
        const double f = normal_cdf(x) - p;
        if (f > 0.0) hi = x; else lo = x;
        const double dfdx = normal_pdf(x);
        double step = (dfdx > 0.0) ? f / dfdx : 0.0;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi); // bisect when Newton leaves the bracket
        if (std::abs(xn - x) <= 1e-15 * (1.0 + std::abs(xn))) { x = xn; break; }
        x = xn;
    }
    return flip ? -x : x;
}

double h_function(double x, double y) {
    const double u = y - x;
    return x * normal_cdf(u) - normal_pdf(u);
}

double tail_cutoff(double t) {
    // 1 - Phi(d) = t  <=>  d = -Phi^{-1}(t); this form keeps full accuracy
    // for tiny t because the quantile is evaluated on its small branch.
    return -normal_quantile(t);
}

double tail_mean(double x) {
    if (x >= 37.0)
        throw std::overflow_error("tail_mean: tail mass underflows for x >= 37");
    return normal_pdf(x) / normal_tail(x);
}

} // namespace kmstab
