#pragma once

#include <vector>

#include "quantum/density_matrix.hpp"

namespace qpl {

/// Real phase-space quasi-density W(x, p) on the x grid and the momentum grid
/// conjugate to the xi grid.  Convention: W = (1/2 pi hbar) int dxi
/// e^{i p xi / hbar} rho(x, xi), so that integral W dx dp = 1 and
/// integral W dp = P(x) hold exactly on the sampled grids.
struct WignerState {
    SpatialGrid x_grid;
    std::vector<double> p_points;
    double dp;
    double hbar;
    std::vector<double> w;  // [ix * n_p + ip]

    WignerState(const SpatialGrid& xg, std::vector<double> p, double dp_, double hb)
        : x_grid(xg), p_points(std::move(p)), dp(dp_), hbar(hb),
          w(static_cast<std::size_t>(xg.size()) * p_points.size()) {}

    double& at(int ix, int ip) {
        return w[static_cast<std::size_t>(ix) * p_points.size() + static_cast<std::size_t>(ip)];
    }
    double at(int ix, int ip) const {
        return w[static_cast<std::size_t>(ix) * p_points.size() + static_cast<std::size_t>(ip)];
    }

    double total_mass() const;               // integral W dx dp
    std::vector<double> x_marginal() const;  // integral W dp, per x node
    std::vector<double> p_marginal() const;  // integral W dx, per p node
    double min_value() const;
};

/// Wigner transform of the relative-frame density matrix.  The momentum grid
/// is the discrete Fourier conjugate of the xi grid, which makes the position
/// marginal identity exact.  Requires rho to have decayed at the xi edges;
/// reports the largest imaginary residue encountered.
WignerState wigner_transform(const DensityMatrixXY& rho, double* imag_residue = nullptr);

}  // namespace qpl
