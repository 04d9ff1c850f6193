#pragma once

#include <limits>
#include <vector>

namespace kmstab {

// Closed interval on the extended real line. Infinite endpoints are the
// explicit sentinels for half lines and the whole line.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

// One-dimensional Gaussian mixture with a shared scale: sum_k w_k N(mu_k, sigma^2).
// Weights are positive and sum to 1 (within 1e-12), means strictly increasing.
struct GaussianMixture1D {
    std::vector<double> w;
    std::vector<double> mu;
    double sigma = 1.0;

    GaussianMixture1D(std::vector<double> weights, std::vector<double> means, double s);

    int K() const { return static_cast<int>(w.size()); }
    // Gap between adjacent means; smallest and largest (equal when K == 2).
    double delta_min() const;
    double delta_max() const;
    double pdf(double x) const;
};

// Two-component mixture in "paper units": means 0 and delta, unit scale.
GaussianMixture1D two_component(double w1, double delta);

// P_m(I).
double mixture_mass(const GaussianMixture1D& m, Interval iv);

// E_m[X | X in I] via the closed form
//   int_lo^hi x phi_{mu,s}(x) dx = mu * mass + s * (phi((lo-mu)/s) - phi((hi-mu)/s)).
// Throws std::domain_error when the interval carries (numerically) no mass.
double truncated_mixture_mean(const GaussianMixture1D& m, Interval iv);

} // namespace kmstab
