#include "kmstab/models.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kmstab {

void ModelSpec::validate() const {
    if (dim == 0 || components == 0) throw std::invalid_argument("empty model");
    if (means.size() != components * dim) throw std::invalid_argument("means size mismatch");
    if (weights.size() != components) throw std::invalid_argument("weights size mismatch");
    if (var_diag.size() != dim) throw std::invalid_argument("variance size mismatch");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw std::invalid_argument("weights must be positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("weights must sum to 1");
    for (double v : var_diag)
        if (!(v > 0.0)) throw std::invalid_argument("variances must be positive");
}

ModelSpec balanced2d() {
    ModelSpec m;
    m.name = "balanced2d";
    m.dim = 2;
    m.components = 4;
    m.means = {-3.0, 3.0, 0.0, 0.0, 3.0, 3.0, 3.0, -3.0};
    m.weights = {0.25, 0.25, 0.25, 0.25};
    m.var_diag = {0.2, 1.0};
    return m;
}

ModelSpec imbalanced2d() {
    ModelSpec m = balanced2d();
    m.name = "imbalanced2d";
    m.weights = {0.1, 0.5, 0.3, 0.1};
    return m;
}

ModelSpec tendim() {
    ModelSpec m;
    m.name = "tendim";
    m.dim = 10;
    m.components = 10;
    m.means.assign(100, 0.0);
    for (std::size_t k = 0; k < 10; ++k) m.means[k * 10] = static_cast<double>(k + 1);
    m.weights.assign(10, 0.1);
    m.var_diag.assign(10, 0.05);
    return m;
}

ModelSpec mixture1d(std::vector<double> weights, std::vector<double> means) {
    ModelSpec m;
    m.name = "mixture1d";
    m.dim = 1;
    m.components = weights.size();
    m.means = std::move(means);
    m.weights = std::move(weights);
    m.var_diag = {1.0};
    m.validate();
    return m;
}

ModelSpec model_by_name(const std::string& name) {
    if (name == "balanced2d") return balanced2d();
    if (name == "imbalanced2d") return imbalanced2d();
    if (name == "tendim") return tendim();
    throw std::invalid_argument("unknown model: " + name);
}

GaussianMixture1D as_mixture1d(const ModelSpec& model) {
    model.validate();
    if (model.dim != 1) throw std::invalid_argument("model is not one-dimensional");
    return GaussianMixture1D(model.weights, model.means, std::sqrt(model.var_diag[0]));
}

Dataset generate_dataset(const ModelSpec& model, std::size_t n, Rng& rng) {
    model.validate();
    std::vector<double> cum(model.components);
    std::partial_sum(model.weights.begin(), model.weights.end(), cum.begin());
    cum.back() = 1.0;

    std::vector<double> sd(model.dim);
    for (std::size_t t = 0; t < model.dim; ++t) sd[t] = std::sqrt(model.var_diag[t]);

    Dataset data;
    data.n = n;
    data.d = model.dim;
    data.x.resize(n * model.dim);
    data.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        std::size_t k = 0;
        while (k + 1 < model.components && u > cum[k]) ++k;
        data.labels[i] = static_cast<int>(k);
        const double* mu = model.mean(k);
        double* p = data.x.data() + i * model.dim;
        for (std::size_t t = 0; t < model.dim; ++t) p[t] = mu[t] + sd[t] * rng.normal();
    }
    return data;
}

} // namespace kmstab
