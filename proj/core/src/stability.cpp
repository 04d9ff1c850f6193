#include "kmstab/stability.hpp"

#include "kmstab/init_schemes.hpp"
#include "kmstab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kmstab {

namespace {

// Minimum-cost perfect matching on a square matrix via shortest augmenting
// paths with potentials.
long long hungarian_min_cost(const std::vector<long long>& cost, std::size_t k) {
    const long long inf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> u(k + 1, 0), v(k + 1, 0);
    std::vector<std::size_t> match(k + 1, 0), way(k + 1, 0);
    for (std::size_t i = 1; i <= k; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<long long> minv(k + 1, inf);
        std::vector<bool> used(k + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = match[j0];
            std::size_t j1 = 0;
            long long delta = inf;
            for (std::size_t j = 1; j <= k; ++j) {
                if (used[j]) continue;
                const long long cur = cost[(i0 - 1) * k + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= k; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    long long total = 0;
    for (std::size_t j = 1; j <= k; ++j) total += cost[(match[j] - 1) * k + (j - 1)];
    return total;
}

std::size_t nearest_mean(const double* p, const Centers& means) {
    std::size_t best = 0;
    double best_d = squared_distance(p, means.center(0), means.d);
    for (std::size_t j = 1; j < means.k; ++j) {
        const double dj = squared_distance(p, means.center(j), means.d);
        if (dj < best_d) {
            best_d = dj;
            best = j;
        }
    }
    return best;
}

double mean_pairwise_mmd(const std::vector<std::vector<int>>& labelings, std::size_t k) {
    if (labelings.size() < 2) return 0.0;
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < labelings.size(); ++a) {
        for (std::size_t b = a + 1; b < labelings.size(); ++b) {
            sum += minimal_matching_distance(labelings[a], labelings[b], k);
            ++pairs;
        }
    }
    return sum / static_cast<double>(pairs);
}

// Mean distance between pairs of uniformly random labelings: the yardstick
// for the optional normalization.
double random_labeling_baseline(std::size_t n, std::size_t k, Rng& rng, int pairs = 20) {
    double sum = 0.0;
    std::vector<int> a(n), b(n);
    for (int p = 0; p < pairs; ++p) {
        for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<int>(rng.below(k));
        for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<int>(rng.below(k));
        sum += minimal_matching_distance(a, b, k);
    }
    return sum / pairs;
}

constexpr std::uint64_t kEvalStream = 0xE7A1;
constexpr std::uint64_t kSharedDataStream = 0xDA7A;
constexpr std::uint64_t kFixedInitStream = 0xF17ED00000ULL;
constexpr std::uint64_t kBaselineStream = 0xBA5E000000ULL;

std::uint64_t rep_stream(int mode_id, std::size_t k, int rep) {
    return (static_cast<std::uint64_t>(mode_id + 1) << 40) |
           (static_cast<std::uint64_t>(k) << 20) | static_cast<std::uint64_t>(rep);
}

Centers draw_init(const Dataset& data, std::size_t k, const InitScheme& scheme, Rng& rng) {
    switch (scheme.kind) {
    case InitKind::uniform:
        return init_uniform(data, k, rng);
    case InitKind::min_diam:
        return min_diam_init(data, k, rng);
    case InitKind::pruned_min_diam:
        return pruned_min_diam(data, k, scheme.params, rng).centers;
    case InitKind::deterministic:
        if (!scheme.points) throw std::invalid_argument("deterministic init without points");
        if (scheme.points->k != k)
            throw std::invalid_argument("deterministic init must carry exactly k_prime points");
        return *scheme.points;
    }
    throw std::logic_error("unknown init kind");
}

} // namespace

double minimal_matching_distance(const std::vector<int>& labels_a,
                                 const std::vector<int>& labels_b, std::size_t k) {
    if (labels_a.size() != labels_b.size())
        throw std::invalid_argument("label vectors differ in length");
    if (k == 0) throw std::invalid_argument("k must be positive");
    const std::size_t n = labels_a.size();
    if (n == 0) return 0.0;

    std::vector<long long> agree(k * k, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const int a = labels_a[i];
        const int b = labels_b[i];
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= k ||
            static_cast<std::size_t>(b) >= k)
            throw std::invalid_argument("label out of range");
        ++agree[static_cast<std::size_t>(a) * k + static_cast<std::size_t>(b)];
    }
    std::vector<long long> cost(k * k);
    for (std::size_t i = 0; i < k * k; ++i) cost[i] = -agree[i];
    const long long best_agree = -hungarian_min_cost(cost, k);
    return 1.0 - static_cast<double>(best_agree) / static_cast<double>(n);
}

std::vector<std::size_t> configuration(const Centers& centers, const Centers& true_means) {
    if (true_means.k == 0) throw std::invalid_argument("no true means");
    if (centers.d != true_means.d) throw std::invalid_argument("dimension mismatch");
    std::vector<std::size_t> counts(true_means.k, 0);
    for (std::size_t j = 0; j < centers.k; ++j) ++counts[nearest_mean(centers.center(j), true_means)];
    return counts;
}

bool is_good_initialization(const Centers& centers, const Centers& true_means) {
    const auto counts = configuration(centers, true_means);
    return std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c >= 1; });
}

std::size_t count_border_crossings(const std::vector<Centers>& trajectory,
                                   const Centers& true_means) {
    if (trajectory.empty()) throw std::invalid_argument("empty trajectory");
    std::size_t crossings = 0;
    for (std::size_t t = 0; t + 1 < trajectory.size(); ++t) {
        const Centers& cur = trajectory[t];
        const Centers& nxt = trajectory[t + 1];
        for (std::size_t j = 0; j < cur.k; ++j)
            if (nearest_mean(cur.center(j), true_means) != nearest_mean(nxt.center(j), true_means))
                ++crossings;
    }
    return crossings;
}

std::string to_string(ProtocolMode mode) {
    switch (mode) {
    case ProtocolMode::randomization_only: return "randomization_only";
    case ProtocolMode::resampling_only: return "resampling_only";
    case ProtocolMode::both: return "both";
    }
    return "?";
}

StabilityReport run_protocol(const ModelSpec& model, const ProtocolSpec& spec) {
    model.validate();
    if (spec.repetitions < 2) throw std::invalid_argument("need at least 2 repetitions");
    if (spec.restarts < 1) throw std::invalid_argument("restarts must be positive");
    if (spec.k_values.empty()) throw std::invalid_argument("empty k_prime range");
    if (spec.modes.empty()) throw std::invalid_argument("no protocol modes");
    if (spec.n == 0 || spec.eval_n == 0) throw std::invalid_argument("empty sample sizes");

    Centers true_means;
    true_means.k = model.components;
    true_means.d = model.dim;
    true_means.c = model.means;

    Rng eval_rng(derive_seed(spec.seed, kEvalStream));
    const Dataset eval_data = generate_dataset(model, spec.eval_n, eval_rng);

    StabilityReport report;
    report.model = model;
    report.spec = spec;

    // One dataset shared by every randomization-only cell.
    Dataset shared;
    bool have_shared = false;
    for (ProtocolMode mode : spec.modes) {
        if (mode != ProtocolMode::randomization_only || have_shared) continue;
        Rng rng(derive_seed(spec.seed, kSharedDataStream));
        shared = generate_dataset(model, spec.n, rng);
        have_shared = true;
    }

    for (ProtocolMode mode : spec.modes) {
        const int mode_id = static_cast<int>(mode);
        for (std::size_t k : spec.k_values) {
            StabilityCell cell;
            cell.mode = mode;
            cell.k_prime = k;
            cell.repetitions = spec.repetitions;

            // Resampling without randomization starts every repetition from
            // the same centers: either the user-supplied points, or k points
            // drawn once from the model itself. Drawing them through the
            // scheme instead would smuggle the scheme's quality into a
            // protocol whose whole point is to hold the initialization dumb
            // and fixed.
            Centers fixed_init;
            if (mode == ProtocolMode::resampling_only) {
                if (spec.init.kind == InitKind::deterministic) {
                    fixed_init = draw_init(eval_data, k, spec.init, eval_rng);
                } else {
                    Rng rng(derive_seed(spec.seed, kFixedInitStream + k));
                    const Dataset ref = generate_dataset(model, k, rng);
                    fixed_init = Centers{k, ref.d, ref.x};
                }
            }

            std::vector<std::vector<int>> eval_labels;
            eval_labels.reserve(spec.repetitions);
            double good = 0.0;
            double crossings = 0.0;

            for (int rep = 0; rep < spec.repetitions; ++rep) {
                Rng rng(derive_seed(spec.seed, rep_stream(mode_id, k, rep)));
                const Dataset* data = &shared;
                Dataset own;
                if (mode != ProtocolMode::randomization_only) {
                    own = generate_dataset(model, spec.n, rng);
                    data = &own;
                }

                RepetitionRecord rec;
                bool have_best = false;
                Centers best_init;
                KMeansRun best_run;
                for (int r = 0; r < spec.restarts; ++r) {
                    Centers init;
                    try {
                        init = (mode == ProtocolMode::resampling_only)
                                   ? fixed_init
                                   : draw_init(*data, k, spec.init, rng);
                    } catch (const InsufficientCandidatesError& e) {
                        rec.error = e.what();
                        continue;
                    }
                    KMeansRun run = run_kmeans(*data, init, spec.max_iter);
                    if (!have_best || run.final_cost < best_run.final_cost) {
                        best_run = std::move(run);
                        best_init = std::move(init);
                        have_best = true;
                    }
                }

                if (!have_best) {
                    ++cell.failures;
                    cell.records.push_back(std::move(rec));
                    continue;
                }

                rec.success = true;
                rec.error.clear();
                rec.good_init = is_good_initialization(best_init, true_means);
                rec.init_configuration = configuration(best_init, true_means);
                rec.final_configuration = configuration(best_run.centers, true_means);
                rec.border_crossings = count_border_crossings(best_run.trajectory, true_means);
                rec.iterations = best_run.iterations;
                rec.converged = best_run.converged;
                rec.cost = best_run.final_cost;
                good += rec.good_init ? 1.0 : 0.0;
                crossings += static_cast<double>(rec.border_crossings);
                eval_labels.push_back(assign(eval_data, best_run.centers).cluster);
                cell.records.push_back(std::move(rec));
            }

            const int successes = spec.repetitions - cell.failures;
            cell.mean_mmd = mean_pairwise_mmd(eval_labels, k);
            cell.instability = cell.mean_mmd;
            if (spec.normalize) {
                Rng rng(derive_seed(spec.seed, kBaselineStream + k));
                cell.baseline = random_labeling_baseline(spec.eval_n, k, rng);
                if (cell.baseline > 0.0) cell.instability = cell.mean_mmd / cell.baseline;
            }
            if (successes > 0) {
                cell.good_init_fraction = good / successes;
                cell.mean_crossings = crossings / successes;
            }
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

} // namespace kmstab
