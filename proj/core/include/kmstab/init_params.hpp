#pragma once

#include "kmstab/mixture.hpp"

#include <array>
#include <string>
#include <vector>

namespace kmstab {

// Parameters of the pruned farthest-first initialization and the quantities
// derived from them. Conventions: cluster weights are at least w_min, means
// are at least delta apart (delta_max is the largest adjacent gap), lengths
// are in units of the common sigma.
struct InitParams {
    double w_min = 0.0;
    double delta = 0.0;
    double delta_max = 0.0;
    double d_miss = 0.0; // acceptable chance of missing a cluster (per tail)
    double tau = 0.015;  // impurity tolerance
    int K = 2;           // number of clusters the parameters were sized for
    int L = 0;           // candidate centers to sample
    double p0 = 0.0;     // prune candidates whose cell mass is <= p0
    double t = 0.0;      // 2*Phi(-delta/2): mass a cluster can lose across the midline
};

// L is the smallest integer with (1-t)*w_min*L >= ln(1/(d_miss*w_min)), and
// p0 = 1/(e*L). delta_max defaults to delta.
InitParams compute_init_params(double w_min, double delta, double d_miss, double tau = 0.015,
                               int K = 2, double delta_max = 0.0);

enum class ImpurityFormula { corrected, as_printed };

// Lower bound on the mass that one sampled candidate interval must carry if
// an impure cluster of mass > p0 survives pruning, and the resulting bound
// on the probability that such a cluster exists at all.
struct PurityBounds {
    double delta_z0 = 0.0;     // minimum width of a large impure cluster
    double p1 = 0.0;           // mass bound for the surrounding candidate interval
    double delta_impure = 0.0; // (1 - p1)^(L-1)
    double w1 = 0.0, w2 = 0.0; // weights the bound was evaluated at
};

// The printed form of p1 contradicts the worked reference values; the
// corrected form (complemented Phi arguments) reproduces them and is the
// default. Throws std::domain_error when delta_z0 <= 0 (no impure cluster
// can be large) or the formula degenerates (delta == 2*delta_z0).
PurityBounds impurity_bound(double w1, double w2, double delta, double tau, double p0, int L,
                            ImpurityFormula formula = ImpurityFormula::corrected);

// Grid minimization of p1 over w1, w2 >= w_min with w1 + w2 <= 1-(K-2)*w_min.
PurityBounds impurity_bound_worst_case(double w_min, int K, double delta, double tau, double p0,
                                       int L, double step = 0.005,
                                       ImpurityFormula formula = ImpurityFormula::corrected);

// Radius bounds for candidate centers whose cell is (1-tau)-pure with mass
// above the pruning threshold.
double pure_radius(double w, double tau, double p0);                  // R(w) = r(d((1-tau)*p0/w))
double pure_radius_tilde(double w1, double w2, double tau, double p0, // \tilde R(w1, w2)
                         double delta);

// Half width (1-tau)*R(w_max) + tau*delta_max of the certified landing
// intervals around the means, and those intervals in data units.
double landing_halfwidth(const InitParams& p);
std::vector<Interval> landing_intervals(const GaussianMixture1D& m, const InitParams& p);

struct AssumptionCheck {
    std::string label;
    double slack; // >= 0 means the assumption holds
    bool holds;
};

struct AssumptionReport {
    std::array<AssumptionCheck, 5> items;
    bool all_hold = false;
};

// The five admissibility conditions tying the mixture to the parameters:
// 1. every weight >= w_min
// 2. neighbour density ratios stay below tau/(1-tau) at the quantile that
//    brackets p0 mass around each mean
// 3. d(tau*p0/w_min) < delta/2
// 4. tau/w_min <= 1/2 - Phi(-delta/2)
// 5. (1-3tau)*delta - tau*delta_max > (3R(w_max) + R(w_min))*(1-tau)
AssumptionReport check_assumptions(const GaussianMixture1D& m, const InitParams& p);

} // namespace kmstab
