// Acceptance gate: twelve end-to-end checks with fixed tolerances and seeds,
// one PASS/FAIL line each. Usage: kmstab_acceptance [--criterion N]; without
// the flag every criterion runs. Exit 0 only if everything that ran passed.

#include "kmstab/certify.hpp"
#include "kmstab/init_params.hpp"
#include "kmstab/init_schemes.hpp"
#include "kmstab/kmeans.hpp"
#include "kmstab/models.hpp"
#include "kmstab/rng.hpp"
#include "kmstab/stability.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

using namespace kmstab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

// --- shared random-instance machinery -------------------------------------

struct Instance {
    Dataset data;
    Centers centers;
};

Dataset uniform_cloud(std::size_t n, std::size_t d, Rng& rng) {
    Dataset data;
    data.n = n;
    data.d = d;
    data.x.resize(n * d);
    for (double& v : data.x) v = -5.0 + 10.0 * rng.uniform();
    return data;
}

// A dataset with k centers placed on distinct data points, redrawn until the
// configuration is differentiable: no point on a cell boundary, no empty cell.
Instance off_boundary_instance(Rng& rng) {
    for (;;) {
        const std::size_t d = 1 + rng.below(3);
        const std::size_t n = 5 + rng.below(46);
        const std::size_t k = std::min<std::size_t>(2 + rng.below(4), n);
        Instance inst;
        inst.data = uniform_cloud(n, d, rng);
        inst.centers = init_uniform(inst.data, k, rng);
        if (on_boundary(inst.data, inst.centers)) continue;
        const Assignment asg = assign(inst.data, inst.centers);
        if (std::find(asg.counts.begin(), asg.counts.end(), std::size_t{0}) != asg.counts.end())
            continue;
        return inst;
    }
}

Centers true_means_of(const ModelSpec& model) {
    Centers means;
    means.k = model.components;
    means.d = model.dim;
    means.c = model.means;
    return means;
}

const StabilityCell& cell_of(const StabilityReport& report, ProtocolMode mode, std::size_t k) {
    for (const StabilityCell& cell : report.cells)
        if (cell.mode == mode && cell.k_prime == k) return cell;
    throw std::logic_error("missing protocol cell");
}

// The k at which the curve is strictly smallest, or 0 when the minimum is tied.
std::size_t strict_argmin(const StabilityReport& report, ProtocolMode mode,
                          const std::vector<std::size_t>& ks) {
    std::size_t best_k = 0;
    double best = 0.0;
    for (std::size_t k : ks) {
        const double v = cell_of(report, mode, k).instability;
        if (best_k == 0 || v < best) {
            best_k = k;
            best = v;
        }
    }
    for (std::size_t k : ks)
        if (k != best_k && !(cell_of(report, mode, k).instability > best)) return 0;
    return best_k;
}

// --- criteria ---------------------------------------------------------------

Outcome criterion1() {
    const Certificate left = certify_square_k2(0.2, 7.0, 2.5);
    const Certificate right = certify_square_k2(0.8, 7.0, 2.5);
    const double min_slack = std::min(left.min_slack(), right.min_slack());
    const bool pass = left.stable && right.stable;
    return {pass, fmt("square certificates at w1 0.2 and 0.8, gap 7, a 2.5: min slack %.6f",
                      min_slack)};
}

Outcome criterion2() {
    const Certificate prism = certify_prism_k3(0.2, 14.5, 3.5, 2.5, 1.0);
    const Certificate mirror = certify_prism_k3_mirrored(0.8, 14.5, 3.5, 2.5, 1.0);

    RegionSpec region;
    region.kind = RegionSpec::Kind::prism_k3;
    region.a = 3.5;
    region.b = 2.5;
    region.eps = 1.0;
    const OracleResult o1 = containment_oracle(two_component(0.2, 14.5), region, 9);
    region.kind = RegionSpec::Kind::prism_k3_mirrored;
    const OracleResult o2 = containment_oracle(two_component(0.8, 14.5), region, 9);

    const bool pass = prism.stable && mirror.stable && o1.contained && o2.contained;
    return {pass, fmt("prism and mirrored certificates, oracle-confirmed: min slack %.6f",
                      std::min(prism.min_slack(), mirror.min_slack()))};
}

Outcome criterion3() {
    Rng rng(0xACCE5503);
    int disagreements = 0;
    int squares = 0;
    while (squares < 200) {
        const double w1 = 0.05 + 0.9 * rng.uniform();
        const double delta = 1.0 + 19.0 * rng.uniform();
        const double a = 0.1 + 4.9 * rng.uniform();
        const Certificate cert = certify_square_k2(w1, delta, a);
        if (std::abs(cert.min_slack()) < 1e-7) continue; // knife-edge draw, no verdict
        RegionSpec region;
        region.a = a;
        const OracleResult oracle = containment_oracle(two_component(w1, delta), region, 41);
        if (cert.stable != oracle.contained) ++disagreements;
        ++squares;
    }
    int prisms = 0;
    while (prisms < 50) {
        const double a = 0.4 + 3.0 * rng.uniform();
        const double b = 0.4 + 3.0 * rng.uniform();
        const double eps = (0.1 + 0.8 * rng.uniform()) * 2.0 * a;
        const double delta = a + b + 0.5 + 10.0 * rng.uniform();
        const double w1 = 0.05 + 0.9 * rng.uniform();
        const bool mirrored = prisms % 2 == 1;
        const Certificate cert = mirrored ? certify_prism_k3_mirrored(w1, delta, a, b, eps)
                                          : certify_prism_k3(w1, delta, a, b, eps);
        if (std::abs(cert.min_slack()) < 1e-7) continue;
        RegionSpec region;
        region.kind = mirrored ? RegionSpec::Kind::prism_k3_mirrored : RegionSpec::Kind::prism_k3;
        region.a = a;
        region.b = b;
        region.eps = eps;
        const OracleResult oracle = containment_oracle(two_component(w1, delta), region, 15);
        if (cert.stable != oracle.contained) ++disagreements;
        ++prisms;
    }
    return {disagreements == 0,
            fmt("%d squares + %d prisms vs containment oracle: %d disagreements", squares,
                prisms, disagreements)};
}

Outcome criterion4() {
    Rng rng(0xACCE5504);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Instance inst = off_boundary_instance(rng);
        const Centers lloyd = lloyd_step(inst.data, inst.centers, assign(inst.data, inst.centers));
        const Centers newton = newton_step(inst.data, inst.centers);
        for (std::size_t i = 0; i < lloyd.c.size(); ++i)
            worst = std::max(worst, std::abs(lloyd.c[i] - newton.c[i]));
    }
    return {worst < 1e-10, fmt("newton vs lloyd on 100 instances: max discrepancy %.3g", worst)};
}

Outcome criterion5() {
    Rng rng(0xACCE5505);
    double worst = 0.0;
    int trial = 0;
    while (trial < 100) {
        const Instance inst = off_boundary_instance(rng);
        CostDerivatives deriv;
        try {
            deriv = cost_derivatives(inst.data, inst.centers);
        } catch (const std::domain_error&) {
            continue;
        }
        // central differences, the step the tolerance is calibrated for
        const double h = 1e-6;
        Centers probe = inst.centers;
        for (std::size_t i = 0; i < probe.c.size(); ++i) {
            const double keep = probe.c[i];
            probe.c[i] = keep + h;
            const double up = cost(inst.data, probe);
            probe.c[i] = keep - h;
            const double down = cost(inst.data, probe);
            probe.c[i] = keep;
            const double fd = (up - down) / (2.0 * h);
            const double rel =
                std::abs(deriv.gradient[i] - fd) / std::max({1.0, std::abs(fd)});
            worst = std::max(worst, rel);
        }
        ++trial;
    }
    return {worst < 1e-6,
            fmt("analytic vs finite-difference gradient on 100 instances: max rel err %.3g",
                worst)};
}

Outcome criterion6() {
    Rng rng(0xACCE5506);
    int steps = 0;
    int violations = 0;
    while (steps < 100) {
        const std::size_t d = 1 + rng.below(3);
        const std::size_t n = 5 + rng.below(46);
        const std::size_t k = std::min<std::size_t>(2 + rng.below(4), n);
        Dataset data = uniform_cloud(n, d, rng);
        const KMeansRun run = run_kmeans(data, init_uniform(data, k, rng));
        for (std::size_t t = 0; t + 1 < run.trajectory.size() && steps < 100; ++t) {
            const std::vector<double> profile =
                trajectory_cost_profile(data, run.trajectory[t], run.trajectory[t + 1], 16);
            for (double v : profile)
                if (v > profile.front() + 1e-12) ++violations;
            ++steps;
        }
    }
    return {violations == 0,
            fmt("cost along 100 update segments, 17 points each: %d increases", violations)};
}

Outcome criterion7() {
    Rng rng(0xACCE5507);
    int mismatches = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t k = 2 + rng.below(4);
        const std::size_t n = 1 + rng.below(12);
        std::vector<int> a(n), b(n);
        for (auto& v : a) v = static_cast<int>(rng.below(k));
        for (auto& v : b) v = static_cast<int>(rng.below(k));

        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        long best_agree = -1;
        do {
            long agree = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (perm[static_cast<std::size_t>(a[i])] == b[i]) ++agree;
            best_agree = std::max(best_agree, agree);
        } while (std::next_permutation(perm.begin(), perm.end()));
        const double exhaustive =
            1.0 - static_cast<double>(best_agree) / static_cast<double>(n);

        if (minimal_matching_distance(a, b, k) != exhaustive) ++mismatches;
    }
    return {mismatches == 0, fmt("matching distance vs 500 permutation minima: %d mismatches",
                                 mismatches)};
}

Outcome criterion8() {
    auto run_line = [](double delta, std::size_t k, std::uint64_t seed) {
        const ModelSpec model = mixture1d({0.5, 0.5}, {0.0, delta});
        ProtocolSpec spec;
        spec.modes = {ProtocolMode::randomization_only};
        spec.repetitions = 100;
        spec.n = 500;
        spec.k_values = {k};
        spec.init.kind = InitKind::pruned_min_diam;
        spec.init.params = compute_init_params(0.5, delta, 0.02);
        spec.seed = seed;
        return run_protocol(model, spec);
    };

    const StabilityReport stable = run_line(7.0, 2, 0xACCE5508);
    const StabilityCell& sc = cell_of(stable, ProtocolMode::randomization_only, 2);

    const StabilityReport contested = run_line(14.5, 3, 0xACCE5518);
    const StabilityCell& cc = cell_of(contested, ProtocolMode::randomization_only, 3);
    int left_heavy = 0, right_heavy = 0, successes = 0;
    for (const RepetitionRecord& rec : cc.records) {
        if (!rec.success) continue;
        ++successes;
        if (rec.final_configuration == std::vector<std::size_t>{2, 1}) ++left_heavy;
        if (rec.final_configuration == std::vector<std::size_t>{1, 2}) ++right_heavy;
    }
    const double lo = successes > 0 ? static_cast<double>(left_heavy) / successes : 0.0;
    const double hi = successes > 0 ? static_cast<double>(right_heavy) / successes : 0.0;

    const bool pass = sc.mean_mmd < 0.02 && cc.mean_mmd > 0.05 && lo >= 0.25 && hi >= 0.25;
    return {pass, fmt("two centers: mean distance %.4f; three centers: %.4f, splits %.2f/%.2f",
                      sc.mean_mmd, cc.mean_mmd, lo, hi)};
}

Outcome criterion9() {
    ProtocolSpec spec;
    spec.repetitions = 100;
    spec.n = 100;
    spec.k_values = {2, 3, 4, 5, 6, 7};
    spec.init.kind = InitKind::pruned_min_diam;
    spec.init.params.L = 20;
    spec.init.params.p0 = 1.0 / (std::exp(1.0) * 20.0);
    spec.normalize = true;

    // The curve argmin is a function of the master seed, so a single
    // realization would test seed luck rather than curve shape. Run the full
    // protocol at many seeds and require the majority behavior: the
    // randomization curves bottom out at k=4, the imbalanced resampling
    // curve has no consistent minimum there. Thresholds sit midway between
    // the rates measured on an independent 50-seed pilot (randomization legs
    // 84-100%, resampling 38%).
    const int seeds = 60;
    const int need_rand = 39; // 65% of 60
    const int cap_resa = 33;  // 55% of 60
    int b_rand = 0, b_both = 0, i_rand = 0, i_both = 0, i_resa = 0;
    for (int s = 0; s < seeds; ++s) {
        spec.seed = derive_seed(0xACCE5509, static_cast<std::uint64_t>(s));
        spec.modes = {ProtocolMode::randomization_only, ProtocolMode::both};
        const StabilityReport balanced = run_protocol(balanced2d(), spec);
        spec.modes = {ProtocolMode::randomization_only, ProtocolMode::resampling_only,
                      ProtocolMode::both};
        const StabilityReport imbalanced = run_protocol(imbalanced2d(), spec);

        b_rand += strict_argmin(balanced, ProtocolMode::randomization_only, spec.k_values) == 4;
        b_both += strict_argmin(balanced, ProtocolMode::both, spec.k_values) == 4;
        i_rand += strict_argmin(imbalanced, ProtocolMode::randomization_only, spec.k_values) == 4;
        i_both += strict_argmin(imbalanced, ProtocolMode::both, spec.k_values) == 4;
        i_resa += strict_argmin(imbalanced, ProtocolMode::resampling_only, spec.k_values) == 4;
    }

    const bool pass = b_rand >= need_rand && b_both >= need_rand && i_rand >= need_rand &&
                      i_both >= need_rand && i_resa <= cap_resa;
    return {pass,
            fmt("curves bottoming at k=4 over %d seeds: balanced rand %d both %d, "
                "imbalanced rand %d both %d (need >= %d), imbalanced resample %d (need <= %d)",
                seeds, b_rand, b_both, i_rand, i_both, need_rand, i_resa, cap_resa)};
}

Outcome criterion10() {
    const ModelSpec model = balanced2d();
    const Centers means = true_means_of(model);
    InitParams params;
    params.L = 20;
    params.p0 = 1.0 / (std::exp(1.0) * 20.0);

    int pruned_good = 0, uniform_good = 0;
    const int seeds = 1000;
    for (int s = 0; s < seeds; ++s) {
        Rng rng(derive_seed(0xACCE550A, static_cast<std::uint64_t>(s)));
        const Dataset data = generate_dataset(model, 100, rng);
        try {
            if (is_good_initialization(pruned_min_diam(data, 4, params, rng).centers, means))
                ++pruned_good;
        } catch (const InsufficientCandidatesError&) {
        }
        if (is_good_initialization(init_uniform(data, 4, rng), means)) ++uniform_good;
    }
    const double fp = static_cast<double>(pruned_good) / seeds;
    const double fu = static_cast<double>(uniform_good) / seeds;
    return {fp - fu >= 0.2,
            fmt("good-init fraction over %d seeds: pruned %.3f vs uniform %.3f", seeds, fp, fu)};
}

Outcome criterion11() {
    const InitParams p = compute_init_params(0.15, 10.0, 0.02);
    const bool l_ok = p.L == 38 || p.L == 39;
    const bool p0_ok = std::abs(p.p0 - 1.0 / (std::exp(1.0) * p.L)) < 1e-15;
    const PurityBounds pb = impurity_bound(0.15, 0.85, p.delta, p.tau, p.p0, p.L);
    const bool imp_ok = pb.delta_impure > 0.016 / 3.0 && pb.delta_impure < 0.016 * 3.0;
    return {l_ok && p0_ok && imp_ok,
            fmt("L %d, p0 %.6f, impurity bound %.6f (reference 0.016)", p.L, p.p0,
                pb.delta_impure)};
}

Outcome criterion12() {
    const ModelSpec model = mixture1d({0.15, 0.85}, {0.0, 10.0});
    const InitParams params = compute_init_params(0.15, 10.0, 0.02);
    const std::vector<Interval> targets = landing_intervals(as_mixture1d(model), params);

    const double delta_impure =
        impurity_bound_worst_case(0.15, 2, params.delta, params.tau, params.p0, params.L)
            .delta_impure;
    const double threshold = 1.0 - 2.0 * params.d_miss - delta_impure - 0.05;

    const int seeds = 400;
    int landed = 0;
    for (int s = 0; s < seeds; ++s) {
        Rng rng(derive_seed(0xACCE550C, static_cast<std::uint64_t>(s)));
        const Dataset data = generate_dataset(model, 1000, rng);
        Centers centers;
        try {
            centers = pruned_min_diam(data, 2, params, rng).centers;
        } catch (const InsufficientCandidatesError&) {
            continue;
        }
        bool ok = true;
        for (const Interval& iv : targets) {
            int inside = 0;
            for (std::size_t j = 0; j < centers.k; ++j)
                if (centers.c[j] >= iv.lo && centers.c[j] <= iv.hi) ++inside;
            if (inside != 1) ok = false;
        }
        if (ok) ++landed;
    }
    const double fraction = static_cast<double>(landed) / seeds;
    return {fraction >= threshold,
            fmt("one center per target interval in %.3f of %d seeds (threshold %.3f)", fraction,
                seeds, threshold)};
}

struct Criterion {
    int id;
    Outcome (*run)();
    double budget_seconds; // 0 = no stated budget
};

const Criterion kCriteria[] = {
    {1, criterion1, 1.0},    {2, criterion2, 1.0},   {3, criterion3, 120.0},
    {4, criterion4, 5.0},    {5, criterion5, 0.0},   {6, criterion6, 0.0},
    {7, criterion7, 0.0},    {8, criterion8, 120.0}, {9, criterion9, 600.0},
    {10, criterion10, 0.0},  {11, criterion11, 0.0}, {12, criterion12, 0.0},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 1;
        }
    }
    if (only < 0 || only > 12) {
        std::fprintf(stderr, "criterion must be 1..12\n");
        return 1;
    }

    bool all_pass = true;
    for (const Criterion& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0.0 && elapsed >= c.budget_seconds) {
            outcome.pass = false;
            outcome.detail += fmt(" [over %.0f s budget]", c.budget_seconds);
        }
        std::printf("criterion %2d: %s  %s (%.1f s)\n", c.id,
                    outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str(), elapsed);
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
