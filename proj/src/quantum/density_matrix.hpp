#pragma once

#include <complex>
#include <vector>

#include "core/grids.hpp"
#include "core/potential.hpp"
#include "quantum/wavefunction.hpp"

namespace qpl {

/// Density matrix in the center/relative frame: x = (q+q')/2, xi = q'-q.
/// The xi grid is symmetric about 0 with an odd point count, so the physical
/// diagonal xi = 0 is a grid row and the trace is directly accessible.
struct DensityMatrixXY {
    SpatialGrid x_grid;
    SpatialGrid xi_grid;
    std::vector<std::complex<double>> values;  // [ix * n_xi + ixi]
    double hbar;

    DensityMatrixXY(const SpatialGrid& xg, const SpatialGrid& xig, double hb)
        : x_grid(xg),
          xi_grid(xig),
          values(static_cast<std::size_t>(xg.size()) * static_cast<std::size_t>(xig.size())),
          hbar(hb) {}

    std::complex<double>& at(int ix, int ixi) {
        return values[static_cast<std::size_t>(ix) * static_cast<std::size_t>(xi_grid.size()) +
                      static_cast<std::size_t>(ixi)];
    }
    const std::complex<double>& at(int ix, int ixi) const {
        return values[static_cast<std::size_t>(ix) * static_cast<std::size_t>(xi_grid.size()) +
                      static_cast<std::size_t>(ixi)];
    }

    int xi_zero_index() const;

    /// rho(x, xi=0): real part of the diagonal row (P(x)).
    std::vector<double> diagonal() const;

    /// integral of rho(x, 0) dx
    double trace() const;

    /// max over the lattice of |rho(x,xi) - conj(rho(x,-xi))|
    double hermiticity_defect() const;

    /// largest |rho| on the outer boundary rows/columns
    double edge_magnitude() const;

    /// probability mass absorbed into the outer two x cells of the diagonal
    double edge_mass() const;
};

/// Builds rho(x, xi) = psi(x - xi/2) conj(psi(x + xi/2)) on x_grid = psi.grid
/// and the given xi grid.  Off-node arguments use cubic interpolation; nodes
/// that coincide with psi's grid are exact.
DensityMatrixXY to_relative_frame(const WaveFunction& psi, const SpatialGrid& xi_grid);

/// Convenience: xi grid with spacing 2*dx aligned to psi's grid (exact nodes).
SpatialGrid aligned_xi_grid(const SpatialGrid& x_grid);

struct TransferOptions {
    double trace_tolerance = 1e-3;   // per-slice drift before renormalization
    double edge_abort = 1e-6;        // absorbed diagonal edge mass triggering abort
    bool cell_average = false;       // integrate the kernel phase over source cells
};

struct TransferResult {
    DensityMatrixXY rho;
    double max_trace_drift = 0.0;
    std::vector<double> trace_by_slice;
    // final state on the full (q, q') lattice, for exact continuation
    std::vector<std::complex<double>> rho_q_final;
};

/// Chains the discretized short-time density-matrix kernel
///   K((x1,xi1)|(x0,xi0)) = m/(2 pi hbar eps) *
///     exp{ (i/hbar) [ -m (x1-x0)(xi1-xi0)/eps
///                     + (eps/2)(g(x0,xi0) + g(x1,xi1)) ] },
///   g(x,xi) = V(x + xi/2) - V(x - xi/2),
/// over the slices of `time`, renormalizing the trace after each slice.
/// Internally the slice is applied in its product form K kron K* on the
/// (q, q') lattice (the frame change is exact index arithmetic on an aligned
/// xi grid), which keeps the sampled kinetic phase clean.  Requires an
/// xi grid with spacing 2 dx centered on 0.
TransferResult propagate_density_matrix_pathintegral(const DensityMatrixXY& rho0,
                                                     const Potential1D& pot,
                                                     const TimeGrid& time,
                                                     const TransferOptions& opt = {});

/// Continues a previous propagation from its exact internal state (the
/// (x, xi) projection alone cannot carry the odd half of the (q, q') lattice).
TransferResult resume_density_matrix_pathintegral(const TransferResult& prev,
                                                  const Potential1D& pot, const TimeGrid& time,
                                                  const TransferOptions& opt = {});

/// One matrix element of the slice kernel (for direct checks against the
/// analytic product form K * conj(K)).
std::complex<double> slice_kernel_element(const Potential1D& pot, double eps, double hbar,
                                          double x0, double xi0, double x1, double xi1);

}  // namespace qpl
