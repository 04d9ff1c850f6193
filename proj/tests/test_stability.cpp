#include "kmstab/stability.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

using namespace kmstab;

namespace {

Centers make_centers(std::size_t k, std::size_t d, std::vector<double> c) {
    Centers out;
    out.k = k;
    out.d = d;
    out.c = std::move(c);
    return out;
}

std::vector<int> random_labels(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<int> out(n);
    for (auto& v : out) v = static_cast<int>(rng.below(k));
    return out;
}

} // namespace

TEST_SUITE_BEGIN("stability");

TEST_CASE("matching distance on known pairs") {
    const std::vector<int> a = {0, 0, 1, 1};
    CHECK(minimal_matching_distance(a, a, 2) == 0.0);

    // a global relabeling costs nothing
    const std::vector<int> swapped = {1, 1, 0, 0};
    CHECK(minimal_matching_distance(a, swapped, 2) == 0.0);

    const std::vector<int> off_by_one = {0, 1, 1, 1};
    CHECK(minimal_matching_distance(a, off_by_one, 2) == doctest::Approx(0.25));

    const std::vector<int> b = {0, 1, 2, 0, 1, 2};
    const std::vector<int> c = {2, 0, 1, 2, 0, 0};
    CHECK(minimal_matching_distance(b, c, 3) ==
          doctest::Approx(oracle::brute_force_mmd(b, c, 3)));

    CHECK(minimal_matching_distance({}, {}, 4) == 0.0);
    CHECK_THROWS_AS(minimal_matching_distance({0, 1}, {0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(minimal_matching_distance({0, 2}, {0, 1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(minimal_matching_distance({0}, {0}, 0), std::invalid_argument);
}

TEST_CASE("matching distance agrees with exhaustive search") {
    Rng rng(1123);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t k = 2 + rng.below(4);
        const std::size_t n = 1 + rng.below(40);
        const auto a = random_labels(n, k, rng);
        const auto b = random_labels(n, k, rng);
        const double fast = minimal_matching_distance(a, b, k);
        const double slow = oracle::brute_force_mmd(a, b, k);
        CHECK(std::abs(fast - slow) < 1e-12);
    }
}

TEST_CASE("matching distance is a bounded pseudometric") {
    Rng rng(40404);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t k = 2 + rng.below(4);
        const std::size_t n = 2 + rng.below(30);
        const auto a = random_labels(n, k, rng);
        const auto b = random_labels(n, k, rng);
        const auto c = random_labels(n, k, rng);
        const double ab = minimal_matching_distance(a, b, k);
        const double ba = minimal_matching_distance(b, a, k);
        const double bc = minimal_matching_distance(b, c, k);
        const double ac = minimal_matching_distance(a, c, k);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
        CHECK(ab >= 0.0);
        // an optimal matching agrees on at least n/k points
        CHECK(ab <= 1.0 - 1.0 / static_cast<double>(k) + 1e-12);
        CHECK(ac <= ab + bc + 1e-12);
    }
}

TEST_CASE("configuration counts centers by nearest true mean") {
    const Centers means = make_centers(2, 1, {0.0, 7.0});

    const Centers both = make_centers(3, 1, {0.1, 0.2, 6.9});
    CHECK(configuration(both, means) == std::vector<std::size_t>{2, 1});
    CHECK(is_good_initialization(both, means));

    const Centers lopsided = make_centers(2, 1, {0.1, 0.2});
    CHECK(configuration(lopsided, means) == std::vector<std::size_t>{2, 0});
    CHECK_FALSE(is_good_initialization(lopsided, means));

    // equidistant centers go to the lower mean index
    const Centers tie = make_centers(1, 1, {3.5});
    CHECK(configuration(tie, means) == std::vector<std::size_t>{1, 0});

    const auto counts = configuration(both, means);
    std::size_t total = 0;
    for (auto v : counts) total += v;
    CHECK(total == both.k);

    CHECK_THROWS_AS(configuration(make_centers(1, 2, {0.0, 0.0}), means),
                    std::invalid_argument);
}

TEST_CASE("border crossings count nearest-mean changes along the trajectory") {
    const Centers means = make_centers(2, 1, {0.0, 7.0});
    const Centers start = make_centers(2, 1, {1.0, 6.0});

    CHECK(count_border_crossings({start}, means) == 0);
    CHECK(count_border_crossings({start, start}, means) == 0);

    const Centers drifted = make_centers(2, 1, {1.0, 2.0});
    CHECK(count_border_crossings({start, drifted}, means) == 1);
    // crossing back counts again
    CHECK(count_border_crossings({start, drifted, start}, means) == 2);

    CHECK_THROWS_AS(count_border_crossings({}, means), std::invalid_argument);
}

TEST_CASE("fixed data and fixed initialization give zero instability") {
    const ModelSpec model = mixture1d({0.5, 0.5}, {0.0, 7.0});
    ProtocolSpec spec;
    spec.modes = {ProtocolMode::randomization_only};
    spec.repetitions = 3;
    spec.n = 200;
    spec.k_values = {2};
    spec.init.kind = InitKind::deterministic;
    spec.init.points = make_centers(2, 1, {0.0, 7.0});
    spec.normalize = true;
    spec.seed = 42;

    const StabilityReport report = run_protocol(model, spec);
    REQUIRE(report.cells.size() == 1);
    const StabilityCell& cell = report.cells[0];
    CHECK(cell.failures == 0);
    CHECK(cell.mean_mmd == 0.0);
    CHECK(cell.instability == 0.0);
    CHECK(cell.baseline > 0.2);
    CHECK(cell.good_init_fraction == 1.0);
    CHECK(cell.mean_crossings == 0.0);
    for (const auto& rec : cell.records) {
        CHECK(rec.success);
        CHECK(rec.converged);
        CHECK(rec.init_configuration == std::vector<std::size_t>{1, 1});
        CHECK(rec.final_configuration == std::vector<std::size_t>{1, 1});
    }
}

TEST_CASE("reports are reproducible for a fixed seed") {
    const ModelSpec model = balanced2d();
    ProtocolSpec spec;
    spec.modes = {ProtocolMode::randomization_only, ProtocolMode::both};
    spec.repetitions = 4;
    spec.n = 60;
    spec.k_values = {2, 3};
    spec.init.kind = InitKind::uniform;
    spec.seed = 101;

    const StabilityReport first = run_protocol(model, spec);
    const StabilityReport second = run_protocol(model, spec);
    REQUIRE(first.cells.size() == 4);
    REQUIRE(second.cells.size() == 4);
    for (std::size_t i = 0; i < first.cells.size(); ++i) {
        const auto& x = first.cells[i];
        const auto& y = second.cells[i];
        CHECK(x.mode == y.mode);
        CHECK(x.k_prime == y.k_prime);
        CHECK(x.instability == y.instability);
        CHECK(x.mean_mmd == y.mean_mmd);
        CHECK(x.failures == y.failures);
        CHECK(x.good_init_fraction == y.good_init_fraction);
        REQUIRE(x.records.size() == y.records.size());
        for (std::size_t r = 0; r < x.records.size(); ++r) {
            CHECK(x.records[r].cost == y.records[r].cost);
            CHECK(x.records[r].final_configuration == y.records[r].final_configuration);
        }
    }

    spec.seed = 202;
    const StabilityReport other = run_protocol(model, spec);
    bool any_difference = false;
    for (std::size_t i = 0; i < first.cells.size(); ++i)
        for (std::size_t r = 0; r < first.cells[i].records.size(); ++r)
            if (other.cells[i].records[r].cost != first.cells[i].records[r].cost)
                any_difference = true;
    CHECK(any_difference);
}

TEST_CASE("repetitions that cannot build an initialization count as failures") {
    const ModelSpec model = mixture1d({0.5, 0.5}, {0.0, 7.0});
    ProtocolSpec spec;
    spec.modes = {ProtocolMode::randomization_only};
    spec.repetitions = 3;
    spec.n = 50;
    spec.k_values = {2};
    spec.init.kind = InitKind::pruned_min_diam;
    spec.init.params.L = 5;
    spec.init.params.p0 = 2.0; // no cell can clear this, so every candidate is pruned
    spec.seed = 9;

    const StabilityReport report = run_protocol(model, spec);
    REQUIRE(report.cells.size() == 1);
    const StabilityCell& cell = report.cells[0];
    CHECK(cell.failures == 3);
    CHECK(cell.mean_mmd == 0.0);
    CHECK(cell.good_init_fraction == 0.0);
    for (const auto& rec : cell.records) {
        CHECK_FALSE(rec.success);
        CHECK_FALSE(rec.error.empty());
    }
}

TEST_CASE("well separated mixture is stable under the pruned scheme") {
    const ModelSpec model = mixture1d({0.5, 0.5}, {0.0, 7.0});
    const InitParams params = compute_init_params(0.5, 7.0, 0.02);
    REQUIRE(params.L == 10);

    ProtocolSpec spec;
    spec.modes = {ProtocolMode::randomization_only, ProtocolMode::resampling_only,
                  ProtocolMode::both};
    spec.repetitions = 8;
    spec.n = 500;
    spec.k_values = {2};
    spec.init.kind = InitKind::pruned_min_diam;
    spec.init.params = params;
    spec.seed = 2026;

    const StabilityReport report = run_protocol(model, spec);
    REQUIRE(report.cells.size() == 3);
    for (const StabilityCell& cell : report.cells) {
        CHECK(cell.failures == 0);
        CHECK(cell.mean_mmd < 0.02);
        CHECK(cell.good_init_fraction == 1.0);
    }
}

TEST_CASE("protocol validation") {
    const ModelSpec model = mixture1d({0.5, 0.5}, {0.0, 7.0});
    ProtocolSpec spec;
    spec.repetitions = 1;
    CHECK_THROWS_AS(run_protocol(model, spec), std::invalid_argument);
    spec.repetitions = 2;
    spec.restarts = 0;
    CHECK_THROWS_AS(run_protocol(model, spec), std::invalid_argument);
    spec.restarts = 1;
    spec.k_values = {};
    CHECK_THROWS_AS(run_protocol(model, spec), std::invalid_argument);
    spec.k_values = {2};
    spec.modes = {};
    CHECK_THROWS_AS(run_protocol(model, spec), std::invalid_argument);
    spec.modes = {ProtocolMode::randomization_only};
    spec.n = 0;
    CHECK_THROWS_AS(run_protocol(model, spec), std::invalid_argument);
    spec.n = 50;
    spec.init.kind = InitKind::deterministic; // no points supplied
    CHECK_THROWS_AS(run_protocol(model, spec), std::invalid_argument);

    CHECK(to_string(ProtocolMode::randomization_only) == "randomization_only");
    CHECK(to_string(ProtocolMode::resampling_only) == "resampling_only");
    CHECK(to_string(ProtocolMode::both) == "both");
}

TEST_SUITE_END();
