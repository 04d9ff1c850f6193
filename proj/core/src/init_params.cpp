#include "kmstab/init_params.hpp"

#include "kmstab/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kmstab {

InitParams compute_init_params(double w_min, double delta, double d_miss, double tau, int K,
                               double delta_max) {
    if (!(w_min > 0.0) || !(w_min < 1.0)) throw std::invalid_argument("w_min must be in (0,1)");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (!(d_miss > 0.0) || !(d_miss < 1.0)) throw std::invalid_argument("d_miss must be in (0,1)");
    if (!(tau > 0.0) || !(tau < 0.5)) throw std::invalid_argument("tau must be in (0,1/2)");
    if (K < 2) throw std::invalid_argument("K must be at least 2");
    if (delta_max == 0.0) delta_max = delta;
    if (delta_max < delta) throw std::invalid_argument("delta_max must be >= delta");

    InitParams p;
    p.w_min = w_min;
    p.delta = delta;
    p.delta_max = delta_max;
    p.d_miss = d_miss;
    p.tau = tau;
    p.K = K;
    p.t = 2.0 * normal_cdf(-delta / 2.0);
    const double l_real = std::log(1.0 / (d_miss * w_min)) / ((1.0 - p.t) * w_min);
    p.L = static_cast<int>(std::ceil(l_real));
    p.p0 = 1.0 / (std::exp(1.0) * p.L);
    return p;
}

PurityBounds impurity_bound(double w1, double w2, double delta, double tau, double p0, int L,
                            ImpurityFormula formula) {
    if (!(w1 > 0.0) || !(w2 > 0.0) || w1 + w2 > 1.0 + 1e-12)
        throw std::invalid_argument("weights must be positive with w1 + w2 <= 1");
    if (L < 2) throw std::invalid_argument("L must be at least 2");

    // Width an impure cluster straddling the gap must have if its mass
    // exceeds p0: trim from each side the quantile cutting tau*p0 mass.
    const double dz = delta - tail_cutoff(tau * p0 / w1) - tail_cutoff(tau * p0 / w2);
    if (!(dz > 0.0)) throw std::domain_error("no impure cluster can exceed the pruning mass");

    const double big_d = delta - 2.0 * dz;
    if (big_d == 0.0) throw std::domain_error("degenerate interval width");

    const double a = big_d / 2.0;
    const double b1 = std::log(w1 / w2) / big_d;
    const double b2 = -b1;

    PurityBounds out;
    out.delta_z0 = dz;
    out.w1 = w1;
    out.w2 = w2;
    if (formula == ImpurityFormula::corrected) {
        out.p1 = w1 * normal_cdf(-a + b1) + w2 * normal_cdf(-a + b2);
    } else {
        out.p1 = w1 * normal_cdf(a - b1) + w2 * normal_cdf(a - b2);
    }
    out.p1 = std::clamp(out.p1, 0.0, 1.0);
    out.delta_impure = std::pow(1.0 - out.p1, L - 1);
    return out;
}

PurityBounds impurity_bound_worst_case(double w_min, int K, double delta, double tau, double p0,
                                       int L, double step, ImpurityFormula formula) {
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    const double budget = 1.0 - (K - 2) * w_min; // mass left for the two clusters at the gap
    if (budget < 2.0 * w_min) throw std::invalid_argument("w_min too large for K clusters");

    bool found = false;
    PurityBounds worst;
    for (double w1 = w_min; w1 <= budget - w_min + 1e-12; w1 += step) {
        for (double w2 = w_min; w1 + w2 <= budget + 1e-12; w2 += step) {
            PurityBounds cand;
            try {
                cand = impurity_bound(w1, w2, delta, tau, p0, L, formula);
            } catch (const std::domain_error&) {
                continue;
            }
            if (!found || cand.p1 < worst.p1) {
                worst = cand;
                found = true;
            }
        }
    }
    if (!found) throw std::domain_error("impurity bound undefined on the whole weight grid");
    return worst;
}

double pure_radius(double w, double tau, double p0) {
    return tail_mean(tail_cutoff((1.0 - tau) * p0 / w));
}

double pure_radius_tilde(double w1, double w2, double tau, double p0, double delta) {
    const double contaminant = tau * w1 / ((1.0 - tau) * w2);
    const double neighbour = normal_cdf(tail_cutoff((1.0 - tau) * p0 / w1) - delta);
    const double q = contaminant + neighbour;
    if (!(q > 0.0) || !(q < 1.0)) throw std::domain_error("tilde radius undefined");
    return -normal_quantile(q);
}

double landing_halfwidth(const InitParams& p) {
    const double w_max = 1.0 - (p.K - 1) * p.w_min;
    return (1.0 - p.tau) * pure_radius(w_max, p.tau, p.p0) + p.tau * p.delta_max;
}

std::vector<Interval> landing_intervals(const GaussianMixture1D& m, const InitParams& p) {
    const double hw = landing_halfwidth(p) * m.sigma;
    std::vector<Interval> out;
    out.reserve(static_cast<std::size_t>(m.K()));
    for (int k = 0; k < m.K(); ++k) out.push_back(Interval{m.mu[k] - hw, m.mu[k] + hw});
    return out;
}

AssumptionReport check_assumptions(const GaussianMixture1D& m, const InitParams& p) {
    AssumptionReport rep;

    // 1: all weights at least w_min.
    double s1 = *std::min_element(m.w.begin(), m.w.end()) - p.w_min;
    rep.items[0] = {"weights above w_min", s1, s1 >= 0.0};

    // 2: at the points bracketing p0 mass around each mean, the density of
    // the other components is at most tau/(1-tau) times the component's own.
    const double x_off = normal_quantile(0.5 + (1.0 - p.tau) * p.p0 / (2.0 * p.w_min));
    double s2 = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m.K(); ++k) {
        for (double side : {-1.0, 1.0}) {
            const double x = m.mu[k] + side * x_off * m.sigma;
            const double own = m.w[k] * normal_pdf((x - m.mu[k]) / m.sigma) / m.sigma;
            double others = 0.0;
            for (int j = 0; j < m.K(); ++j) {
                if (j == k) continue;
                others += m.w[j] * normal_pdf((x - m.mu[j]) / m.sigma) / m.sigma;
            }
            s2 = std::min(s2, (p.tau / (1.0 - p.tau)) * own - others);
        }
    }
    rep.items[1] = {"gamma density ratio", s2, s2 >= 0.0};

    // 3: the tau*p0/w_min tail cutoff stays inside half the minimum gap.
    double s3 = p.delta / 2.0 - tail_cutoff(p.tau * p.p0 / p.w_min);
    rep.items[2] = {"tail cutoff within half gap", s3, s3 >= 0.0};

    // 4: impurity tolerance small against the cross-midline mass.
    double s4 = (0.5 - normal_cdf(-p.delta / 2.0)) - p.tau / p.w_min;
    rep.items[3] = {"tau versus midline mass", s4, s4 >= 0.0};

    // 5: gap dominates the pure-candidate radii.
    const double w_max = 1.0 - (p.K - 1) * p.w_min;
    double s5 = (1.0 - 3.0 * p.tau) * p.delta - p.tau * p.delta_max -
                (3.0 * pure_radius(w_max, p.tau, p.p0) + pure_radius(p.w_min, p.tau, p.p0)) *
                    (1.0 - p.tau);
    rep.items[4] = {"gap dominates radii", s5, s5 >= 0.0};

    rep.all_hold = true;
    for (const auto& it : rep.items) rep.all_hold = rep.all_hold && it.holds;
    return rep;
}

} // namespace kmstab
