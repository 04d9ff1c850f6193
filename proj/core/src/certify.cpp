#include "kmstab/certify.hpp"
#include "kmstab/gaussian.hpp"
#include "kmstab/population.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kmstab {

double Certificate::min_slack() const {
    double s = std::numeric_limits<double>::infinity();
    for (const auto& c : checks) s = std::min(s, c.slack);
    return s;
}

namespace {

void validate_square(double w1, double delta, double a) {
    if (!(w1 > 0.0 && w1 < 1.0)) throw std::invalid_argument("certify: w1 must lie in (0,1)");
    if (!(delta > 0.0)) throw std::invalid_argument("certify: delta must be positive");
    if (!(a > 0.0)) throw std::invalid_argument("certify: a must be positive");
}

void validate_prism(double w1, double delta, double a, double b, double eps) {
    validate_square(w1, delta, a);
    if (!(b > 0.0)) throw std::invalid_argument("certify: b must be positive");
    if (!(eps > 0.0 && eps < 2.0 * a))
        throw std::invalid_argument("certify: eps must lie in (0, 2a)");
}

} // namespace

Certificate certify_square_k2(double w1, double delta, double a, CertificateMode mode) {
    validate_square(w1, delta, a);
    const double w2 = 1.0 - w1;
    const double y = 0.5 * delta;

    Certificate cert;
    cert.mode = mode;
    cert.region = {RegionSpec::Kind::square_k2, a, 0.0, 0.0};
    cert.w1 = w1;
    cert.delta = delta;

    // Worst cases sit at the region corners: the cell boundary (c1+c2)/2
    // ranges over [mid - a, mid + a], and each face inequality pins one end.
    // ineq8:  lower face of c1  (boundary at its leftmost)
    // ineq9:  upper face of c1  (boundary at its rightmost)
    // ineq10: lower face of c2; ineq11: upper face of c2.
    const double e8 = w1 * h_function(a, y) + w2 * h_function(a + delta, y);
    const double e9 = w1 * h_function(-a, y) + w2 * h_function(-a + delta, y);
    cert.checks.push_back({"ineq8", e8});
    cert.checks.push_back({"ineq9", -e9});
    if (mode == CertificateMode::corrected) {
        // By the mirror symmetry of the square these are ineq9/ineq8 with the
        // component weights swapped.
        const double e10 = w1 * h_function(delta - a, y) + w2 * h_function(-a, y);
        const double e11 = w1 * h_function(delta + a, y) + w2 * h_function(a, y);
        cert.checks.push_back({"ineq10", -e10});
        cert.checks.push_back({"ineq11", e11});
    } else {
        const double e10 = w1 * h_function(a - delta, -y) + w2 * h_function(a, y);
        const double e11 = w1 * h_function(-a - delta, -y) + w2 * h_function(-a, -y);
        cert.checks.push_back({"ineq10", e10});
        cert.checks.push_back({"ineq11", -e11});
    }

    cert.stable = cert.min_slack() >= 0.0;
    return cert;
}

Certificate certify_prism_k3(double w1, double delta, double a, double b, double eps,
                             CertificateMode mode) {
    validate_prism(w1, delta, a, b, eps);
    const double w2 = 1.0 - w1;

    Certificate cert;
    cert.mode = mode;
    cert.region = {RegionSpec::Kind::prism_k3, a, b, eps};
    cert.w1 = w1;
    cert.delta = delta;

    // ineq2/ineq3: faces of c1; ineq4/ineq5: faces of c2 (relative to the
    // value at the near boundary); ineq6/ineq7: faces of c3, where the whole-
    // line first moment b -/+ w1*delta enters.
    const double e2 = w1 * h_function(a, 0.5 * eps) + w2 * h_function(a + delta, 0.5 * eps);
    const double e3 =
        w1 * h_function(-a + eps, 0.5 * eps) + w2 * h_function(-a + delta + eps, 0.5 * eps);
    cert.checks.push_back({"ineq2", e2});
    cert.checks.push_back({"ineq3", -e3});

    const double y4 = 0.5 * (a - b + delta - eps);
    const double e4 = w1 * h_function(a - eps, y4) + w2 * h_function(a - eps + delta, y4) -
                      (w1 * h_function(a - eps, -0.5 * eps) +
                       w2 * h_function(a - eps + delta, -0.5 * eps));
    cert.checks.push_back({"ineq4", e4});

    const double y5 = 0.5 * (b - a + delta);
    const double e5 =
        (w1 * h_function(-a, -0.5 * eps) + w2 * h_function(-a + delta, -0.5 * eps)) -
        (w1 * h_function(-a, y5) + w2 * h_function(-a + delta, y5));
    cert.checks.push_back({"ineq5", e5});

    const double y6 = 0.5 * (b - a - delta + eps);
    const double second6 = (mode == CertificateMode::corrected)
                               ? h_function(b, y6)        // printed form repeats b - delta here
                               : h_function(b - delta, y6);
    const double e6 = (b - w1 * delta) - (w1 * h_function(b - delta, y6) + w2 * second6);
    cert.checks.push_back({"ineq6", e6});

    const double y7 = 0.5 * (a - b - delta);
    const double e7 =
        (w1 * h_function(-b - delta, y7) + w2 * h_function(-b, y7)) + b + w1 * delta;
    cert.checks.push_back({"ineq7", e7});

    cert.stable = cert.min_slack() >= 0.0;
    return cert;
}

Certificate certify_prism_k3_mirrored(double w1, double delta, double a, double b, double eps,
                                      CertificateMode mode) {
    // Reflecting centers and mixture about the midpoint swaps the component
    // weights and maps the mirrored prism onto the original one.
    Certificate cert = certify_prism_k3(1.0 - w1, delta, a, b, eps, mode);
    cert.region.kind = RegionSpec::Kind::prism_k3_mirrored;
    cert.w1 = w1;
    return cert;
}

namespace {

struct Box {
    double lo, hi;
};

std::vector<Box> region_boxes(const GaussianMixture1D& m, const RegionSpec& r) {
    const double s = m.sigma, m1 = m.mu[0], m2 = m.mu[1];
    switch (r.kind) {
        case RegionSpec::Kind::square_k2:
            return {{m1 - r.a * s, m1 + r.a * s}, {m2 - r.a * s, m2 + r.a * s}};
        case RegionSpec::Kind::prism_k3:
            return {{m1 - r.a * s, m1 + (r.a - r.eps) * s},
                    {m1 + (r.eps - r.a) * s, m1 + r.a * s},
                    {m2 - r.b * s, m2 + r.b * s}};
        case RegionSpec::Kind::prism_k3_mirrored:
            return {{m1 - r.b * s, m1 + r.b * s},
                    {m2 - r.a * s, m2 + (r.a - r.eps) * s},
                    {m2 + (r.eps - r.a) * s, m2 + r.a * s}};
    }
    throw std::logic_error("region_boxes: unknown kind");
}

} // namespace

OracleResult containment_oracle(const GaussianMixture1D& m, const RegionSpec& region,
                                int grid_per_axis) {
    if (m.K() != 2) throw std::invalid_argument("containment_oracle: mixture must have 2 components");
    if (grid_per_axis < 2) throw std::invalid_argument("containment_oracle: grid_per_axis must be >= 2");

    const std::vector<Box> boxes = region_boxes(m, region);
    const size_t dim = boxes.size();
    const double tol = 1e-9 * m.sigma;

    std::vector<std::vector<double>> axis(dim);
    for (size_t j = 0; j < dim; ++j) {
        axis[j].resize(grid_per_axis);
        for (int i = 0; i < grid_per_axis; ++i)
            axis[j][i] = boxes[j].lo +
                         (boxes[j].hi - boxes[j].lo) * static_cast<double>(i) / (grid_per_axis - 1);
    }

    OracleResult res;
    res.contained = true;

    std::vector<int> idx(dim, 0);
    std::vector<double> c(dim);
    while (true) {
        for (size_t j = 0; j < dim; ++j) c[j] = axis[j][idx[j]];

        // The region carries the ordering constraint c1 <= c2 <= ...; grid
        // points violating it (or degenerate ties) are not region members.
        bool ordered = true;
        for (size_t j = 1; j < dim; ++j)
            if (!(c[j] > c[j - 1])) { ordered = false; break; }

        if (ordered) {
            ++res.points_checked;
            std::vector<double> image = population_update(m, c);
            bool inside = true;
            for (size_t j = 0; j < dim; ++j)
                if (image[j] < boxes[j].lo - tol || image[j] > boxes[j].hi + tol) {
                    inside = false;
                    break;
                }
            if (!inside) {
                res.contained = false;
                res.witness = c;
                res.witness_image = std::move(image);
                break;
            }
        } else {
            ++res.points_skipped;
        }

        // lexicographic advance, last axis fastest
        size_t j = dim;
        while (j > 0) {
            --j;
            if (++idx[j] < grid_per_axis) break;
            idx[j] = 0;
            if (j == 0) return res;
        }
    }
    return res;
}

} // namespace kmstab
