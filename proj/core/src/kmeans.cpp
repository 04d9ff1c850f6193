#include "kmstab/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kmstab {

namespace {

void validate(const Dataset& data, const Centers& centers) {
    if (data.n == 0 || data.d == 0) throw std::invalid_argument("empty dataset");
    if (data.x.size() != data.n * data.d) throw std::invalid_argument("dataset size mismatch");
    if (centers.k == 0) throw std::invalid_argument("no centers");
    if (centers.d != data.d) throw std::invalid_argument("dimension mismatch");
    if (centers.c.size() != centers.k * centers.d)
        throw std::invalid_argument("centers size mismatch");
}

} // namespace

double squared_distance(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
    }
    return s;
}

Assignment assign(const Dataset& data, const Centers& centers) {
    validate(data, centers);
    Assignment asg;
    asg.cluster.resize(data.n);
    asg.counts.assign(centers.k, 0);
    for (std::size_t i = 0; i < data.n; ++i) {
        const double* p = data.point(i);
        int best = 0;
        double best_d = squared_distance(p, centers.center(0), data.d);
        for (std::size_t j = 1; j < centers.k; ++j) {
            const double dj = squared_distance(p, centers.center(j), data.d);
            if (dj < best_d) {
                best_d = dj;
                best = static_cast<int>(j);
            }
        }
        asg.cluster[i] = best;
        ++asg.counts[best];
    }
    return asg;
}

Centers lloyd_step(const Dataset& data, const Centers& centers, const Assignment& asg) {
    validate(data, centers);
    if (asg.cluster.size() != data.n) throw std::invalid_argument("assignment size mismatch");
    Centers next = centers;
    std::vector<double> sums(centers.k * centers.d, 0.0);
    for (std::size_t i = 0; i < data.n; ++i) {
        const double* p = data.point(i);
        double* s = sums.data() + static_cast<std::size_t>(asg.cluster[i]) * data.d;
        for (std::size_t t = 0; t < data.d; ++t) s[t] += p[t];
    }
    for (std::size_t j = 0; j < centers.k; ++j) {
        if (asg.counts[j] == 0) continue; // stale center kept in place
        double* cj = next.center(j);
        const double inv = 1.0 / static_cast<double>(asg.counts[j]);
        for (std::size_t t = 0; t < data.d; ++t) cj[t] = sums[j * data.d + t] * inv;
    }
    return next;
}

double cost(const Dataset& data, const Centers& centers) {
    validate(data, centers);
    double total = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
        const double* p = data.point(i);
        double best = squared_distance(p, centers.center(0), data.d);
        for (std::size_t j = 1; j < centers.k; ++j)
            best = std::min(best, squared_distance(p, centers.center(j), data.d));
        total += best;
    }
    return 0.5 * total;
}

bool on_boundary(const Dataset& data, const Centers& centers, double tol) {
    validate(data, centers);
    if (data.d == 1) {
        std::vector<double> cs(centers.c);
        std::sort(cs.begin(), cs.end());
        for (std::size_t i = 0; i < data.n; ++i) {
            const double xi = data.x[i];
            for (std::size_t j = 0; j + 1 < cs.size(); ++j) {
                if (std::abs(xi - 0.5 * (cs[j] + cs[j + 1])) <= tol) return true;
            }
        }
        return false;
    }
    for (std::size_t i = 0; i < data.n; ++i) {
        const double* p = data.point(i);
        double d1 = std::numeric_limits<double>::infinity();
        double d2 = d1;
        for (std::size_t j = 0; j < centers.k; ++j) {
            const double dj = std::sqrt(squared_distance(p, centers.center(j), data.d));
            if (dj < d1) {
                d2 = d1;
                d1 = dj;
            } else if (dj < d2) {
                d2 = dj;
            }
        }
        if (centers.k >= 2 && d2 - d1 <= tol) return true;
    }
    return false;
}

CostDerivatives cost_derivatives(const Dataset& data, const Centers& centers) {
    validate(data, centers);
    CostDerivatives out;
    out.gradient.assign(centers.k * centers.d, 0.0);
    out.counts.assign(centers.k, 0);
    for (std::size_t i = 0; i < data.n; ++i) {
        const double* p = data.point(i);
        int best = 0;
        double best_d = squared_distance(p, centers.center(0), data.d);
        bool tie = false;
        for (std::size_t j = 1; j < centers.k; ++j) {
            const double dj = squared_distance(p, centers.center(j), data.d);
            if (dj == best_d) tie = true;
            if (dj < best_d) {
                best_d = dj;
                best = static_cast<int>(j);
                tie = false;
            }
        }
        if (tie) throw std::domain_error("cost not differentiable: point equidistant to centers");
        double* g = out.gradient.data() + static_cast<std::size_t>(best) * data.d;
        const double* c = centers.center(static_cast<std::size_t>(best));
        for (std::size_t t = 0; t < data.d; ++t) g[t] += c[t] - p[t];
        ++out.counts[static_cast<std::size_t>(best)];
    }
    return out;
}

Centers newton_step(const Dataset& data, const Centers& centers) {
    const CostDerivatives der = cost_derivatives(data, centers);
    for (std::size_t j = 0; j < centers.k; ++j)
        if (der.counts[j] == 0) throw std::domain_error("singular Hessian: empty cluster");
    Centers next = centers;
    for (std::size_t j = 0; j < centers.k; ++j) {
        double* cj = next.center(j);
        const double inv = 1.0 / static_cast<double>(der.counts[j]);
        for (std::size_t t = 0; t < centers.d; ++t)
            cj[t] -= der.gradient[j * centers.d + t] * inv;
    }
    return next;
}

KMeansRun run_kmeans(const Dataset& data, Centers init, int max_iter) {
    validate(data, init);
    KMeansRun run;
    run.centers = std::move(init);
    run.trajectory.push_back(run.centers);
    run.assignment = assign(data, run.centers);
    for (int it = 0; it < max_iter; ++it) {
        Centers next = lloyd_step(data, run.centers, run.assignment);
        Assignment next_asg = assign(data, next);
        ++run.iterations;
        run.centers = std::move(next);
        run.trajectory.push_back(run.centers);
        if (next_asg == run.assignment) {
            run.assignment = std::move(next_asg);
            run.converged = true;
            break;
        }
        run.assignment = std::move(next_asg);
    }
    run.final_cost = cost(data, run.centers);
    return run;
}

std::vector<double> trajectory_cost_profile(const Dataset& data, const Centers& from,
                                            const Centers& to, int n_alpha) {
    validate(data, from);
    validate(data, to);
    if (from.k != to.k) throw std::invalid_argument("center count mismatch");
    if (n_alpha < 1) throw std::invalid_argument("n_alpha must be positive");
    std::vector<double> profile;
    profile.reserve(static_cast<std::size_t>(n_alpha) + 1);
    Centers mid = from;
    for (int s = 0; s <= n_alpha; ++s) {
        const double alpha = static_cast<double>(s) / n_alpha;
        for (std::size_t i = 0; i < mid.c.size(); ++i)
            mid.c[i] = (1.0 - alpha) * from.c[i] + alpha * to.c[i];
        profile.push_back(cost(data, mid));
    }
    return profile;
}

} // namespace kmstab
