#include "semiclassical/wigner_sampling.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace qpl {

WignerSampler::WignerSampler(const WignerState& w0, double negativity_tolerance) {
    const double mn = w0.min_value();
    if (mn < -negativity_tolerance)
        throw UsageError("WignerSampler: Wigner function is materially negative (min = " +
                         std::to_string(mn) + "); positive initial conditions required");

    n_p_ = w0.p_points.size();
    const std::size_t n_x = static_cast<std::size_t>(w0.x_grid.size());
    dx_ = w0.x_grid.dx();
    dp_ = w0.dp;
    x_min_ = w0.x_grid.x_min();
    p_min_ = w0.p_points.front();

    cdf_.resize(n_x * n_p_);
    double acc = 0.0;
    for (std::size_t i = 0; i < n_x * n_p_; ++i) {
        acc += std::max(0.0, w0.w[i]);
        cdf_[i] = acc;
    }
    if (!(acc > 0.0)) throw UsageError("WignerSampler: Wigner function has no positive mass");
    for (double& c : cdf_) c /= acc;
    cdf_.back() = 1.0;
}

PhasePoint WignerSampler::sample(RngStream& rng) const {
    const double v = rng.uniform01();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), v);
    std::size_t cell = static_cast<std::size_t>(it - cdf_.begin());
    if (cell >= cdf_.size()) cell = cdf_.size() - 1;
    const std::size_t ix = cell / n_p_;
    const std::size_t ip = cell % n_p_;
    // jitter uniformly within the cell centered on the node
    const double jx = rng.uniform01() - 0.5;
    const double jp = rng.uniform01() - 0.5;
    return {x_min_ + (static_cast<double>(ix) + jx) * dx_,
            p_min_ + (static_cast<double>(ip) + jp) * dp_};
}

std::vector<PhasePoint> sample_initial_conditions(const WignerState& w0, std::size_t n,
                                                  std::uint64_t seed) {
    const WignerSampler sampler(w0);
    std::vector<PhasePoint> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        RngStream rng(seed, i);
        out[i] = sampler.sample(rng);
    }
    return out;
}

}  // namespace qpl
