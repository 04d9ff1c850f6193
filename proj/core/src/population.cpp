#include "kmstab/population.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kmstab {

std::vector<double> population_update(const GaussianMixture1D& m,
                                      const std::vector<double>& centers) {
    const size_t k = centers.size();
    if (k == 0) throw std::invalid_argument("population_update: no centers");
    for (size_t j = 1; j < k; ++j)
        if (!(centers[j] > centers[j - 1]))
            throw std::invalid_argument("population_update: centers must be strictly increasing");

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> out(k);
    double lo = -inf;
    for (size_t j = 0; j < k; ++j) {
        const double hi = (j + 1 < k) ? 0.5 * (centers[j] + centers[j + 1]) : inf;
        out[j] = truncated_mixture_mean(m, {lo, hi});
        lo = hi;
    }
    return out;
}

PopulationRun population_fixed_point(const GaussianMixture1D& m,
                                     std::vector<double> centers,
                                     double tol, int max_iter) {
    PopulationRun run;
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> next = population_update(m, centers);
        double move = 0.0;
        for (size_t j = 0; j < centers.size(); ++j)
            move = std::max(move, std::abs(next[j] - centers[j]));
        centers = std::move(next);
        run.iterations = it + 1;
        if (move < tol) {
            run.converged = true;
            break;
        }
    }
    run.centers = std::move(centers);
    return run;
}

} // namespace kmstab
