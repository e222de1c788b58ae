#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "core/errors.hpp"
#include "core/grids.hpp"
#include "core/potential.hpp"
#include "core/trajectory.hpp"

namespace qpl {

/// Friction/temperature parameter pack for the overdamped dynamics.  The
/// diffusion coefficient and inverse temperature are always derived from the
/// primaries, never stored.  T = 0 is allowed for the deterministic gradient
/// flow; beta() then refuses.
struct BrownianParams {
    double mass = 1.0;
    double gamma = 1.0;
    double temperature = 1.0;
    double k_boltzmann = 1.0;

    void validate() const {
        if (!(mass > 0.0) || !(gamma > 0.0) || !(k_boltzmann > 0.0) || temperature < 0.0)
            throw ConfigError("BrownianParams: mass, gamma, k_B must be positive, T >= 0");
    }

    double diffusion() const { return k_boltzmann * temperature / (mass * gamma); }

    double beta() const {
        if (!(temperature > 0.0))
            throw ConfigError("BrownianParams: beta undefined at T = 0");
        return 1.0 / (k_boltzmann * temperature);
    }
};

/// Initial distribution of trajectory starting points.
struct InitialSpec {
    enum class Kind { delta, gaussian };
    Kind kind = Kind::delta;
    double x0 = 0.0;
    double sigma = 0.0;

    static InitialSpec delta(double x0) { return {Kind::delta, x0, 0.0}; }
    static InitialSpec gaussian(double x0, double sigma) { return {Kind::gaussian, x0, sigma}; }
};

struct LangevinOptions {
    bool store_paths = false;
    int n_threads = 0;                      // 0 = hardware
    double stability_limit = 0.5;           // eps * max|V''|/(m gamma) must stay below
    std::optional<SpatialGrid> stability_range;  // where max|V''| is probed
};

/// Euler-Maruyama integration of dx/dt = -V'(x)/(m gamma) + R(t) with
/// R_k ~ Normal(0, 2D/eps) per slice.  Trajectory i draws from stream
/// (seed, i), so results are bit-identical for any thread count.
TrajectoryEnsemble langevin_simulate(const BrownianParams& params, const Potential1D& pot,
                                     const InitialSpec& initial, const TimeGrid& time,
                                     std::size_t n_traj, std::uint64_t seed,
                                     const LangevinOptions& opt = {});

/// Functional-form variant: draws the whole noise path R first (its implied
/// path weight is the discretized Gaussian functional), then lets the
/// constraint select the trajectory by integrating the same update rule.
/// Distributionally identical to langevin_simulate by construction.
TrajectoryEnsemble langevin_simulate_functional_form(const BrownianParams& params,
                                                     const Potential1D& pot,
                                                     const InitialSpec& initial,
                                                     const TimeGrid& time, std::size_t n_traj,
                                                     std::uint64_t seed,
                                                     const LangevinOptions& opt = {});

struct NoiseMoments {
    double mean = 0.0;
    double se_mean = 0.0;
    std::vector<double> autocov;  // by lag, starting at lag 0
    std::size_t n = 0;
};

/// Sample mean and autocovariance by lag of slice-noise realizations.
NoiseMoments noise_moment_check(std::span<const double> samples, int max_lag);

}  // namespace qpl
