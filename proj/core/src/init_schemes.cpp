#include "kmstab/init_schemes.hpp"

#include <algorithm>
#include <numeric>

namespace kmstab {

namespace {

// First k entries of a random permutation of 0..n-1.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i)
        std::swap(idx[i], idx[i + static_cast<std::size_t>(rng.below(n - i))]);
    idx.resize(k);
    return idx;
}

Centers gather(const Dataset& data, const std::vector<std::size_t>& idx) {
    Centers c;
    c.k = idx.size();
    c.d = data.d;
    c.c.reserve(c.k * c.d);
    for (std::size_t i : idx)
        c.c.insert(c.c.end(), data.point(i), data.point(i) + data.d);
    return c;
}

} // namespace

Centers init_uniform(const Dataset& data, std::size_t k_prime, Rng& rng) {
    if (k_prime == 0) throw std::invalid_argument("k_prime must be positive");
    if (k_prime > data.n) throw std::invalid_argument("k_prime exceeds dataset size");
    return gather(data, sample_indices(data.n, k_prime, rng));
}

Centers min_diam_select(const Centers& candidates, std::size_t k_prime, Rng& rng) {
    if (k_prime == 0) throw std::invalid_argument("k_prime must be positive");
    if (k_prime > candidates.k)
        throw InsufficientCandidatesError("min_diam_select: " + std::to_string(candidates.k) +
                                          " candidates for k_prime=" + std::to_string(k_prime));

    const std::size_t n = candidates.k;
    std::vector<std::size_t> order;
    order.reserve(k_prime);
    order.push_back(static_cast<std::size_t>(rng.below(n)));

    std::vector<double> min_d(n);
    for (std::size_t j = 0; j < n; ++j)
        min_d[j] = squared_distance(candidates.center(j), candidates.center(order[0]), candidates.d);

    std::vector<bool> taken(n, false);
    taken[order[0]] = true;
    while (order.size() < k_prime) {
        std::size_t best = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (taken[j]) continue;
            if (best == n || min_d[j] > min_d[best]) best = j;
        }
        taken[best] = true;
        order.push_back(best);
        for (std::size_t j = 0; j < n; ++j)
            min_d[j] = std::min(min_d[j],
                                squared_distance(candidates.center(j), candidates.center(best),
                                                 candidates.d));
    }

    Centers out;
    out.k = k_prime;
    out.d = candidates.d;
    out.c.reserve(k_prime * candidates.d);
    for (std::size_t j : order)
        out.c.insert(out.c.end(), candidates.center(j), candidates.center(j) + candidates.d);
    return out;
}

Centers min_diam_init(const Dataset& data, std::size_t k_prime, Rng& rng) {
    Centers all;
    all.k = data.n;
    all.d = data.d;
    all.c = data.x;
    return min_diam_select(all, k_prime, rng);
}

PrunedInit pruned_min_diam(const Dataset& data, std::size_t k_prime, const InitParams& params,
                           Rng& rng) {
    if (k_prime < 2) throw std::invalid_argument("pruned_min_diam needs k_prime >= 2");
    if (params.L < 1) throw std::invalid_argument("params.L must be positive");
    if (!(params.p0 > 0.0)) throw std::invalid_argument("params.p0 must be positive");

    PrunedInit out;
    auto& diag = out.diagnostics;
    diag.L_requested = params.L;
    std::size_t L = static_cast<std::size_t>(params.L);
    if (L > data.n) {
        L = data.n;
        diag.warnings.push_back("L exceeds dataset size, capped at n=" + std::to_string(data.n));
    }
    diag.L_used = static_cast<int>(L);
    if (params.w_min > 0.0 && static_cast<double>(k_prime) > 1.0 / params.w_min)
        diag.warnings.push_back("k_prime exceeds 1/w_min; guarantees do not cover this range");

    const Centers sampled = gather(data, sample_indices(data.n, L, rng));
    const Assignment asg = assign(data, sampled);
    const Centers moved = lloyd_step(data, sampled, asg);

    diag.candidate_masses.resize(L);
    std::vector<std::size_t> survivors;
    for (std::size_t j = 0; j < L; ++j) {
        const double mass = static_cast<double>(asg.counts[j]) / static_cast<double>(data.n);
        diag.candidate_masses[j] = mass;
        if (mass > params.p0) survivors.push_back(j);
    }
    diag.survivors = survivors.size();
    if (survivors.size() < k_prime)
        throw InsufficientCandidatesError(
            "pruned_min_diam: " + std::to_string(survivors.size()) + " survivors of " +
            std::to_string(L) + " candidates for k_prime=" + std::to_string(k_prime));

    Centers pool;
    pool.k = survivors.size();
    pool.d = data.d;
    pool.c.reserve(pool.k * pool.d);
    for (std::size_t j : survivors)
        pool.c.insert(pool.c.end(), moved.center(j), moved.center(j) + data.d);

    out.centers = min_diam_select(pool, k_prime, rng);
    return out;
}

} // namespace kmstab
