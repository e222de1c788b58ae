#pragma once

#include <cstdint>
#include <vector>

#include "core/rng.hpp"
#include "core/trajectory.hpp"
#include "quantum/wigner.hpp"

namespace qpl {

// Inverse-CDF sampler over a positive Wigner grid: the cell CDF picks a grid
// cell, a uniform jitter places the point inside it.  Construction fails on
// materially negative input, the excluded case for trajectory sampling.
class WignerSampler {
public:
    explicit WignerSampler(const WignerState& w0, double negativity_tolerance = 1e-10);

    PhasePoint sample(RngStream& rng) const;

private:
    double x_min_, dx_;
    double p_min_, dp_;
    std::size_t n_p_ = 0;
    std::vector<double> cdf_;  // over flattened cells
};

/// n draws (x_a, p_a) ~ W0.  Trajectory i uses stream (seed, i); the
/// semiclassical simulators continue on the same per-trajectory streams.
std::vector<PhasePoint> sample_initial_conditions(const WignerState& w0, std::size_t n,
                                                  std::uint64_t seed);

}  // namespace qpl
