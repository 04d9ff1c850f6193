#pragma once

#include "kmstab/kmeans.hpp"
#include "kmstab/mixture.hpp"
#include "kmstab/rng.hpp"

#include <string>
#include <vector>

namespace kmstab {

// Gaussian mixture in d dimensions with diagonal covariance shared by all
// components. Means are stored row-major, one row per component.
struct ModelSpec {
    std::string name;
    std::size_t dim = 0;
    std::size_t components = 0;
    std::vector<double> means;
    std::vector<double> weights;
    std::vector<double> var_diag; // per-coordinate variance

    void validate() const; // throws std::invalid_argument

    const double* mean(std::size_t k) const { return means.data() + k * dim; }
};

// Four clusters in a cross layout, covariance diag(0.2, 1), equal weights.
ModelSpec balanced2d();
// Same geometry with weights (0.1, 0.5, 0.3, 0.1).
ModelSpec imbalanced2d();
// Ten spherical clusters in ten dimensions, means (i, 0, ..., 0), variance 0.05.
ModelSpec tendim();
// Unit-variance mixture on the line.
ModelSpec mixture1d(std::vector<double> weights, std::vector<double> means);

ModelSpec model_by_name(const std::string& name); // balanced2d, imbalanced2d, tendim

// View of a one-dimensional spec as the analytic mixture type.
GaussianMixture1D as_mixture1d(const ModelSpec& model);

// n i.i.d. draws; component labels kept as ground truth.
Dataset generate_dataset(const ModelSpec& model, std::size_t n, Rng& rng);

} // namespace kmstab
