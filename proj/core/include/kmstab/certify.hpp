#pragma once

#include "kmstab/mixture.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kmstab {

// Closed-form certificates that a region of center configurations is mapped
// into itself by one population k-means update on a two-component mixture
// (means delta apart, lengths measured in units of the common sigma).
//
// square_k2          [mu1-a, mu1+a] x [mu2-a, mu2+a], one center near each mean
// prism_k3           [mu1-a, mu1+a-eps] x [mu1-a+eps, mu1+a] x [mu2-b, mu2+b]
//                    with c1 <= c2 <= c3: two centers near mu1, one near mu2
// prism_k3_mirrored  the reflection of prism_k3 about the mixture midpoint:
//                    one center near mu1, two near mu2
struct RegionSpec {
    enum class Kind { square_k2, prism_k3, prism_k3_mirrored };
    Kind kind = Kind::square_k2;
    double a = 0.0;
    double b = 0.0;   // prism only
    double eps = 0.0; // prism only
};

// Two printed face inequalities disagree with the containment oracle on this
// module's own reference parameters; `corrected` (the default) uses the
// repaired forms, `as_printed` keeps the originals for comparison.
enum class CertificateMode { corrected, as_printed };

struct InequalityCheck {
    std::string label; // stable tag: ineq8..ineq11 (square), ineq2..ineq7 (prism)
    double slack;      // >= 0 means the inequality holds
};

struct Certificate {
    bool stable = false;
    CertificateMode mode = CertificateMode::corrected;
    RegionSpec region;
    double w1 = 0.0, delta = 0.0;
    std::vector<InequalityCheck> checks;
    double min_slack() const;
};

// Each certificate evaluates one face inequality per region face; the region
// is invariant under one population update iff all slacks are >= 0.
Certificate certify_square_k2(double w1, double delta, double a,
                              CertificateMode mode = CertificateMode::corrected);
Certificate certify_prism_k3(double w1, double delta, double a, double b, double eps,
                             CertificateMode mode = CertificateMode::corrected);

// The mirrored prism under weights (w1, w2) carries the same certificate as
// the original prism under swapped weights.
Certificate certify_prism_k3_mirrored(double w1, double delta, double a, double b, double eps,
                                      CertificateMode mode = CertificateMode::corrected);

struct OracleResult {
    bool contained = false;
    std::optional<std::vector<double>> witness;       // first escaping start, lexicographic
    std::optional<std::vector<double>> witness_image; // where it lands
    long points_checked = 0;
    long points_skipped = 0; // grid points violating the center ordering
};

// Brute-force check of the same claim: walk a uniform grid over the region
// (corners included), apply one population update, and verify every image
// stays inside. Containment is judged with a 1e-9*sigma tolerance.
OracleResult containment_oracle(const GaussianMixture1D& m, const RegionSpec& region,
                                int grid_per_axis);

} // namespace kmstab
