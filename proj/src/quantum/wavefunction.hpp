#pragma once

#include <complex>
#include <vector>

#include "core/grids.hpp"
#include "core/potential.hpp"

namespace qpl {

/// Discretized wave function on a uniform grid.  The inner product is the
/// Riemann sum dx * sum |psi|^2; states are kept normalized to 1.
struct WaveFunction {
    SpatialGrid grid;
    std::vector<std::complex<double>> amp;
    double hbar;

    WaveFunction(const SpatialGrid& g, double hb)
        : grid(g), amp(static_cast<std::size_t>(g.size())), hbar(hb) {}

    double norm_sq() const;
    void normalize();
    double mean_x() const;
    double mean_x2() const;
    double var_x() const { return mean_x2() - mean_x() * mean_x(); }
};

/// P(x) = |psi(x)|^2 on the grid.
std::vector<double> probability_density(const WaveFunction& psi);

/// Normalized minimum-uncertainty packet
///   psi(x) ~ exp(-(x-x0)^2/(4 sigma^2) + i p0 (x-x0)/hbar),
/// so Var(x) = sigma^2 and Var(p) = hbar^2/(4 sigma^2).
/// Fails if the packet has not decayed below 1e-10 tail mass at the grid edge.
WaveFunction make_gaussian_packet(const SpatialGrid& grid, double x0, double p0,
                                  double sigma, double hbar);

/// Strang split-step evolution under H = p^2/2m + V(x).  Requires a
/// power-of-two grid (spectral kinetic factor); unitary up to roundoff, and a
/// norm drift beyond 1e-10 per step raises NumericalError.
WaveFunction evolve_schrodinger(const WaveFunction& psi, const Potential1D& pot,
                                double dt, int steps);

/// Momentum-space density |psi~(p)|^2 on the conjugate FFT grid, normalized so
/// that sum * dp = 1.  Returns (p values, density).
std::pair<std::vector<double>, std::vector<double>> momentum_density(const WaveFunction& psi);

}  // namespace qpl
