#pragma once

#include <cstddef>
#include <vector>

namespace kmstab {

// Row-major points; labels are optional ground truth carried along.
struct Dataset {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> x;
    std::vector<int> labels;

    const double* point(std::size_t i) const { return x.data() + i * d; }
};

struct Centers {
    std::size_t k = 0;
    std::size_t d = 0;
    std::vector<double> c;

    double* center(std::size_t j) { return c.data() + j * d; }
    const double* center(std::size_t j) const { return c.data() + j * d; }
};

struct Assignment {
    std::vector<int> cluster;        // per point
    std::vector<std::size_t> counts; // per center

    bool operator==(const Assignment& o) const { return cluster == o.cluster; }
};

double squared_distance(const double* a, const double* b, std::size_t d);

// Nearest center per point; ties go to the lowest center index.
Assignment assign(const Dataset& data, const Centers& centers);

// One mean update. Centers with empty cells are left where they are.
Centers lloyd_step(const Dataset& data, const Centers& centers, const Assignment& asg);

// (1/2) sum of squared distances to the nearest center.
double cost(const Dataset& data, const Centers& centers);

// Whether any point sits on a cell boundary: in one dimension, within tol of
// the midpoint of an adjacent center pair; otherwise, equidistant to its two
// nearest centers within tol.
bool on_boundary(const Dataset& data, const Centers& centers, double tol = 1e-9);

struct CostDerivatives {
    std::vector<double> gradient;    // k*d, layout matching Centers::c
    std::vector<std::size_t> counts; // cell sizes (diagonal Hessian blocks are counts * I)
};

// Gradient of the cost in the centers. Exact distance ties make the cost
// non-differentiable, so those inputs are rejected (std::domain_error).
CostDerivatives cost_derivatives(const Dataset& data, const Centers& centers);

// Newton step on the cost. With the diagonal Hessian this lands exactly on
// the cell means, i.e. one Lloyd update. Empty cells make the Hessian
// singular (std::domain_error).
Centers newton_step(const Dataset& data, const Centers& centers);

struct KMeansRun {
    Centers centers;
    Assignment assignment;
    std::vector<Centers> trajectory; // includes the initial centers
    int iterations = 0;              // Lloyd updates taken
    bool converged = false;          // assignment reached a fixed point
    double final_cost = 0.0;
};

KMeansRun run_kmeans(const Dataset& data, Centers init, int max_iter = 200);

// Cost along the straight segment between two center configurations,
// sampled at n_alpha + 1 evenly spaced points (alpha = 0 .. 1).
std::vector<double> trajectory_cost_profile(const Dataset& data, const Centers& from,
                                            const Centers& to, int n_alpha = 20);

} // namespace kmstab
