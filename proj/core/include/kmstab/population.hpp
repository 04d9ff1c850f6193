#pragma once

#include "kmstab/mixture.hpp"

#include <vector>

namespace kmstab {

// Infinite-data (population) k-means on a 1-D mixture: each center owns the
// interval delimited by midpoints to its neighbours, and one update moves it
// to the conditional mean of its interval.

// One update of all centers. `centers` must be strictly increasing; the
// result is again strictly increasing. Throws std::invalid_argument on
// unsorted or duplicate centers.
std::vector<double> population_update(const GaussianMixture1D& m,
                                      const std::vector<double>& centers);

struct PopulationRun {
    std::vector<double> centers;
    int iterations = 0;
    bool converged = false;
};

// Iterate population_update until the sup-norm movement drops below tol.
PopulationRun population_fixed_point(const GaussianMixture1D& m,
                                     std::vector<double> centers,
                                     double tol = 1e-12, int max_iter = 10000);

} // namespace kmstab
