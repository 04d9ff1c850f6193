#include "kmstab/mixture.hpp"
#include "kmstab/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kmstab {

GaussianMixture1D::GaussianMixture1D(std::vector<double> weights, std::vector<double> means, double s)
    : w(std::move(weights)), mu(std::move(means)), sigma(s) {
    if (w.empty() || w.size() != mu.size())
        throw std::invalid_argument("GaussianMixture1D: weights/means size mismatch");
    if (!(sigma > 0.0))
        throw std::invalid_argument("GaussianMixture1D: sigma must be positive");
    double total = 0.0;
    for (double wk : w) {
        if (!(wk > 0.0)) throw std::invalid_argument("GaussianMixture1D: weights must be positive");
        total += wk;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("GaussianMixture1D: weights must sum to 1");
    for (size_t k = 1; k < mu.size(); ++k)
        if (!(mu[k] > mu[k - 1]))
            throw std::invalid_argument("GaussianMixture1D: means must be strictly increasing");
}

double GaussianMixture1D::delta_min() const {
    if (mu.size() < 2) throw std::logic_error("delta_min: single component");
    double d = mu[1] - mu[0];
    for (size_t k = 2; k < mu.size(); ++k) d = std::min(d, mu[k] - mu[k - 1]);
    return d;
}

double GaussianMixture1D::delta_max() const {
    if (mu.size() < 2) throw std::logic_error("delta_max: single component");
    double d = mu[1] - mu[0];
    for (size_t k = 2; k < mu.size(); ++k) d = std::max(d, mu[k] - mu[k - 1]);
    return d;
}

double GaussianMixture1D::pdf(double x) const {
    double f = 0.0;
    for (size_t k = 0; k < w.size(); ++k)
        f += w[k] * normal_pdf((x - mu[k]) / sigma) / sigma;
    return f;
}

GaussianMixture1D two_component(double w1, double delta) {
    if (!(w1 > 0.0 && w1 < 1.0)) throw std::invalid_argument("two_component: w1 must lie in (0,1)");
    if (!(delta > 0.0)) throw std::invalid_argument("two_component: delta must be positive");
    return GaussianMixture1D({w1, 1.0 - w1}, {0.0, delta}, 1.0);
}

double mixture_mass(const GaussianMixture1D& m, Interval iv) {
    if (!(iv.lo <= iv.hi)) throw std::invalid_argument("mixture_mass: empty interval");
    double mass = 0.0;
    for (size_t k = 0; k < m.w.size(); ++k) {
        const double a = (iv.lo - m.mu[k]) / m.sigma;
        const double b = (iv.hi - m.mu[k]) / m.sigma;
        mass += m.w[k] * normal_interval_mass(a, b);
    }
    return mass;
}

double truncated_mixture_mean(const GaussianMixture1D& m, Interval iv) {
    if (!(iv.lo <= iv.hi)) throw std::invalid_argument("truncated_mixture_mean: empty interval");
    double mass = 0.0, num = 0.0;
    for (size_t k = 0; k < m.w.size(); ++k) {
        const double a = (iv.lo - m.mu[k]) / m.sigma;
        const double b = (iv.hi - m.mu[k]) / m.sigma;
        const double mk = normal_interval_mass(a, b);
        const double pa = std::isinf(a) ? 0.0 : normal_pdf(a);
        const double pb = std::isinf(b) ? 0.0 : normal_pdf(b);
        mass += m.w[k] * mk;
        num += m.w[k] * (m.mu[k] * mk + m.sigma * (pa - pb));
    }
    if (!(mass > 1e-300))
        throw std::domain_error("truncated_mixture_mean: interval carries no mass");
    double mean = num / mass;
    // The exact value always lies inside the interval; keep the guarantee
    // under roundoff as well.
    return std::clamp(mean, iv.lo, iv.hi);
}

} // namespace kmstab
