#include "brownian/path_propagator.hpp"

#include <cmath>

namespace qpl {

std::vector<double> compose_propagators(const std::vector<double>& a,
                                        const std::vector<double>& b, const SpatialGrid& grid) {
    const std::size_t n = static_cast<std::size_t>(grid.size());
    if (a.size() != n * n || b.size() != n * n)
        throw UsageError("compose_propagators: size mismatch");
    std::vector<double> c(n * n, 0.0);
    const double dx = grid.dx();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            const double ail = a[i * n + l] * dx;
            if (ail == 0.0) continue;
            const double* brow = &b[l * n];
            double* crow = &c[i * n];
            for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
        }
    return c;
}

std::vector<double> brownian_pathintegral_propagator(const BrownianParams& params,
                                                     const Potential1D& pot,
                                                     const SpatialGrid& grid,
                                                     const TimeGrid& time,
                                                     const PropagatorOptions& opt) {
    params.validate();
    const double eps = time.eps();
    const double diffusion = params.diffusion();
    const double width = std::sqrt(2.0 * diffusion * eps);
    if (width < opt.min_kernel_points * grid.dx())
        throw NumericalError(
            "brownian_pathintegral_propagator: slice kernel width " + std::to_string(width) +
            " is under-resolved on dx = " + std::to_string(grid.dx()));

    const std::size_t n = static_cast<std::size_t>(grid.size());
    const double inv_mg = 1.0 / (params.mass * params.gamma);
    // slice transition variance 2 D eps, matching the Langevin noise strength
    // and the drift-diffusion equation
    const double coeff = 1.0 / (4.0 * diffusion * eps);
    const double dx = grid.dx();

    // one-slice kernel, column-normalized
    std::vector<double> slice(n * n, 0.0);
    for (std::size_t jcol = 0; jcol < n; ++jcol) {
        const double x0 = grid.x(static_cast<int>(jcol));
        double colsum = 0.0;
        for (std::size_t irow = 0; irow < n; ++irow) {
            const double x1 = grid.x(static_cast<int>(irow));
            const double xbar = (opt.drift == PropagatorOptions::Drift::pre_point)
                                    ? x0
                                    : 0.5 * (x0 + x1);
            const double arg = (x1 - x0) + eps * pot.eval(xbar, 1) * inv_mg;
            const double v = std::exp(-coeff * arg * arg);
            slice[irow * n + jcol] = v;
            colsum += v;
        }
        colsum *= dx;
        if (!(colsum > 0.0))
            throw NumericalError("brownian_pathintegral_propagator: empty kernel column");
        for (std::size_t irow = 0; irow < n; ++irow) slice[irow * n + jcol] /= colsum;
    }

    // J = slice^N (with the dx measure between factors)
    std::vector<double> j_matrix = slice;
    for (int k = 1; k < time.n_slices(); ++k) j_matrix = compose_propagators(slice, j_matrix, grid);
    return j_matrix;
}

std::vector<double> apply_propagator(const std::vector<double>& j_matrix,
                                     const SpatialGrid& grid, const std::vector<double>& p0) {
    const std::size_t n = static_cast<std::size_t>(grid.size());
    if (j_matrix.size() != n * n || p0.size() != n)
        throw UsageError("apply_propagator: size mismatch");
    std::vector<double> out(n, 0.0);
    const double dx = grid.dx();
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = &j_matrix[i * n];
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += row[j] * p0[j];
        out[i] = s * dx;
    }
    return out;
}

}  // namespace qpl
