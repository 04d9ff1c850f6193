#pragma once

#include "kmstab/init_params.hpp"
#include "kmstab/kmeans.hpp"
#include "kmstab/rng.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace kmstab {

struct InsufficientCandidatesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// k_prime distinct data points, sampled without replacement, in sample order.
Centers init_uniform(const Dataset& data, std::size_t k_prime, Rng& rng);

// Greedy farthest-first subset of the candidates, in selection order. The
// first pick is uniform via rng; each later pick maximizes the minimum
// distance to those already selected, ties broken by lowest candidate index.
Centers min_diam_select(const Centers& candidates, std::size_t k_prime, Rng& rng);

// Farthest-first directly on the data points.
Centers min_diam_init(const Dataset& data, std::size_t k_prime, Rng& rng);

struct PrunedDiagnostics {
    int L_requested = 0;
    int L_used = 0;                       // capped at n
    std::vector<double> candidate_masses; // empirical cell mass per sampled candidate
    std::size_t survivors = 0;
    std::vector<std::string> warnings;
};

struct PrunedInit {
    Centers centers;
    PrunedDiagnostics diagnostics;
};

// Sample L data points, take one mean update, drop candidates whose cell
// holds a fraction <= p0 of the data, then farthest-first select k_prime of
// the survivors. Pruning uses the cells of the sampled points themselves:
// the mean update moves each center within its own cell, which leaves the
// cell masses it is judged by unchanged.
PrunedInit pruned_min_diam(const Dataset& data, std::size_t k_prime, const InitParams& params,
                           Rng& rng);

} // namespace kmstab
