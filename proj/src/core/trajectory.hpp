#pragma once

#include <cstdint>
#include <vector>

#include "core/grids.hpp"

namespace qpl {

struct PhasePoint {
    double x = 0.0;
    double p = 0.0;
};

/// Ensemble of discretized trajectories over a common TimeGrid.  Terminal
/// positions and per-time moment sums are always kept; full paths only when
/// requested (they dominate memory for large ensembles).
struct TrajectoryEnsemble {
    TimeGrid time;
    std::size_t n_traj = 0;
    std::uint64_t seed = 0;

    std::vector<double> terminal;     // x(t_b), one per trajectory
    std::vector<double> sum_x;        // per time index, sum over trajectories
    std::vector<double> sum_x2;       // per time index
    bool has_paths = false;
    std::vector<double> paths;        // row-major n_traj x (N+1) when stored

    explicit TrajectoryEnsemble(const TimeGrid& t) : time(t) {}

    double path(std::size_t traj, int k) const {
        return paths[traj * static_cast<std::size_t>(time.n_slices() + 1) + static_cast<std::size_t>(k)];
    }

    double mean_at(int k) const {
        return sum_x[static_cast<std::size_t>(k)] / static_cast<double>(n_traj);
    }

    double var_at(int k) const {
        const double m = mean_at(k);
        return sum_x2[static_cast<std::size_t>(k)] / static_cast<double>(n_traj) - m * m;
    }
};

}  // namespace qpl
