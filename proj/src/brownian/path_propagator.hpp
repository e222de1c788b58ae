#pragma once

#include <vector>

#include "brownian/brownian.hpp"
#include "core/grids.hpp"
#include "core/potential.hpp"

namespace qpl {

struct PropagatorOptions {
    enum class Drift { pre_point, midpoint };
    Drift drift = Drift::pre_point;  // Ito convention by default
    double min_kernel_points = 4.0;  // grid nodes required across sqrt(2 D eps)
};

/// Dense propagator J(x_b | x_a), chained from per-slice kernels
///   exp{ -(m gamma beta / 2 eps) (x1 - x0 + eps V'(xbar)/(m gamma))^2 },
/// each column normalized to unit mass on the grid.  Densities propagate as
/// P_b(x_i) = sum_j J(i,j) P_a(x_j) dx.  Row-major n x n.
std::vector<double> brownian_pathintegral_propagator(const BrownianParams& params,
                                                     const Potential1D& pot,
                                                     const SpatialGrid& grid,
                                                     const TimeGrid& time,
                                                     const PropagatorOptions& opt = {});

std::vector<double> apply_propagator(const std::vector<double>& j_matrix,
                                     const SpatialGrid& grid, const std::vector<double>& p0);

/// C = A B dx (the composition rule for grid propagators).
std::vector<double> compose_propagators(const std::vector<double>& a,
                                        const std::vector<double>& b, const SpatialGrid& grid);

}  // namespace qpl
