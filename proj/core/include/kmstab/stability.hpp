#pragma once

#include "kmstab/init_params.hpp"
#include "kmstab/kmeans.hpp"
#include "kmstab/models.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kmstab {

// Minimum over label permutations of the disagreement fraction, computed as
// an optimal assignment on the k x k confusion matrix. Always in [0, 1-1/k].
double minimal_matching_distance(const std::vector<int>& labels_a,
                                 const std::vector<int>& labels_b, std::size_t k);

// How many centers land nearest to each true mean (ties to the lowest mean
// index); entries sum to the number of centers.
std::vector<std::size_t> configuration(const Centers& centers, const Centers& true_means);

// A center placement is good when every true cluster got at least one center.
bool is_good_initialization(const Centers& centers, const Centers& true_means);

// Events where a center's nearest true mean changes between consecutive
// trajectory entries.
std::size_t count_border_crossings(const std::vector<Centers>& trajectory,
                                   const Centers& true_means);

enum class ProtocolMode { randomization_only, resampling_only, both };

std::string to_string(ProtocolMode mode);

enum class InitKind { uniform, deterministic, min_diam, pruned_min_diam };

struct InitScheme {
    InitKind kind = InitKind::uniform;
    InitParams params;              // pruned_min_diam only
    std::optional<Centers> points;  // deterministic only, exactly K' points
};

struct ProtocolSpec {
    std::vector<ProtocolMode> modes = {ProtocolMode::randomization_only};
    int repetitions = 100;
    std::size_t n = 100;
    std::vector<std::size_t> k_values = {2};
    InitScheme init;
    int restarts = 1;         // keep the lowest-cost run per repetition
    std::size_t eval_n = 2000; // common evaluation sample size
    bool normalize = false;   // divide by the mean distance of random labelings
    int max_iter = 200;
    std::uint64_t seed = 0;
};

struct RepetitionRecord {
    bool success = false;
    std::string error;
    bool good_init = false;
    std::vector<std::size_t> init_configuration;
    std::vector<std::size_t> final_configuration;
    std::size_t border_crossings = 0;
    int iterations = 0;
    bool converged = false;
    double cost = 0.0;
};

struct StabilityCell {
    ProtocolMode mode = ProtocolMode::randomization_only;
    std::size_t k_prime = 0;
    int repetitions = 0;
    int failures = 0;
    double instability = 0.0; // mean pairwise distance, normalized when enabled
    double mean_mmd = 0.0;    // raw mean pairwise distance
    double baseline = 0.0;    // random-labeling distance used for normalization
    double good_init_fraction = 0.0;
    double mean_crossings = 0.0;
    std::vector<RepetitionRecord> records;
};

struct StabilityReport {
    ModelSpec model;
    ProtocolSpec spec;
    std::vector<StabilityCell> cells; // one per (mode, k_prime)
};

// Runs every (mode, k_prime) combination in the ProtocolSpec. Per mode:
// randomization_only reuses one shared dataset and redraws the
// initialization; resampling_only freezes one initialization (k points drawn
// once from the model, or the given deterministic points) and redraws the
// data; both redraws both. Clusterings are compared on a common evaluation
// sample by the labels its points get from each run's final centers. Failed
// repetitions are excluded from the means but counted.
StabilityReport run_protocol(const ModelSpec& model, const ProtocolSpec& spec);

} // namespace kmstab
