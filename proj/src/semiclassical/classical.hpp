#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/potential.hpp"
#include "core/trajectory.hpp"

namespace qpl {

// Stormer-Verlet position update shared by the classical and quasi-Langevin
// integrators; the quasi process reduces to this bitwise when its force
// correction is absent.
inline double stormer_step(double x_prev, double x_curr, double grad_v, double extra_force,
                           double eps, double inv_mass) {
    return 2.0 * x_curr - x_prev + eps * eps * inv_mass * (-grad_v + extra_force);
}

struct ClassicalOptions {
    bool store_paths = false;
    int n_threads = 0;
    double energy_drift_tolerance = 1e-4;  // relative, checked per trajectory
};

/// Deterministic Newton trajectories x'' = -V'(x)/m from the given phase-space
/// initial conditions, integrated by Stormer-Verlet with first-step slope
/// p_a/m.  Raises ConfigError if relative energy drift exceeds the tolerance.
TrajectoryEnsemble classical_evolve(std::span<const PhasePoint> initials, const Potential1D& pot,
                                    const TimeGrid& time, const ClassicalOptions& opt = {});

}  // namespace qpl
