#pragma once

#include <vector>

#include "brownian/brownian.hpp"
#include "core/grids.hpp"
#include "core/potential.hpp"

namespace qpl {

struct FokkerPlanckOptions {
    int substeps_per_slice = 0;   // 0 = auto (at least 400 steps over the run)
    double mass_tolerance = 1e-8;
    double negativity_floor = -1e-12;
};

/// Crank-Nicolson drift-diffusion solve of
///   dP/dt = d/dx [ P V'/(m gamma) ] + D d^2P/dx^2
/// with Scharfetter-Gummel (exponentially fitted) fluxes and no-flux
/// boundaries.  Mass is conserved to solver roundoff and the discrete
/// stationary state is exactly the grid-sampled Boltzmann density.
std::vector<double> fokker_planck_evolve(std::vector<double> p0, const SpatialGrid& grid,
                                         const Potential1D& pot, const BrownianParams& params,
                                         const TimeGrid& time,
                                         const FokkerPlanckOptions& opt = {});

/// Grid-normalized Z^-1 exp(-beta V).
std::vector<double> boltzmann_density(const SpatialGrid& grid, const Potential1D& pot,
                                      const BrownianParams& params);

/// Normalizes a nonnegative grid function to unit Riemann integral.
void normalize_density(std::vector<double>& p, double dx);

}  // namespace qpl
