#include "semiclassical/classical.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace qpl {

TrajectoryEnsemble classical_evolve(std::span<const PhasePoint> initials, const Potential1D& pot,
                                    const TimeGrid& time, const ClassicalOptions& opt) {
    const std::size_t n_traj = initials.size();
    const int n_slices = time.n_slices();
    const std::size_t n_times = static_cast<std::size_t>(n_slices + 1);
    const double eps = time.eps();
    const double inv_m = 1.0 / pot.mass();

    TrajectoryEnsemble ens(time);
    ens.n_traj = n_traj;
    ens.terminal.resize(n_traj);
    ens.has_paths = opt.store_paths;
    if (opt.store_paths) ens.paths.resize(n_traj * n_times);
    ens.sum_x.assign(n_times, 0.0);
    ens.sum_x2.assign(n_times, 0.0);
    if (n_traj == 0) return ens;

    const std::size_t n_chunks = (n_traj + kTrajectoryChunk - 1) / kTrajectoryChunk;
    std::vector<std::vector<double>> chunk_sum_x(n_chunks), chunk_sum_x2(n_chunks);
    std::vector<double> chunk_worst_drift(n_chunks, 0.0);

    parallel_chunks(n_traj, kTrajectoryChunk, opt.n_threads,
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto& sx = chunk_sum_x[chunk];
        auto& sx2 = chunk_sum_x2[chunk];
        sx.assign(n_times, 0.0);
        sx2.assign(n_times, 0.0);
        double worst = 0.0;
        for (std::size_t traj = begin; traj < end; ++traj) {
            double x_prev = initials[traj].x;
            double x_curr = x_prev + eps * initials[traj].p * inv_m;
            sx[0] += x_prev;
            sx2[0] += x_prev * x_prev;
            sx[1] += x_curr;
            sx2[1] += x_curr * x_curr;
            if (opt.store_paths) {
                ens.paths[traj * n_times] = x_prev;
                ens.paths[traj * n_times + 1] = x_curr;
            }
            double e_start = 0.0, e_end = 0.0;
            for (int k = 1; k < n_slices; ++k) {
                const double x_next =
                    stormer_step(x_prev, x_curr, pot.eval(x_curr, 1), 0.0, eps, inv_m);
                // centered velocity at slice k for the energy monitor
                const double v = (x_next - x_prev) / (2.0 * eps);
                const double e = 0.5 * pot.mass() * v * v + pot.eval(x_curr);
                if (k == 1) e_start = e;
                e_end = e;
                x_prev = x_curr;
                x_curr = x_next;
                const std::size_t kt = static_cast<std::size_t>(k + 1);
                sx[kt] += x_curr;
                sx2[kt] += x_curr * x_curr;
                if (opt.store_paths) ens.paths[traj * n_times + kt] = x_curr;
            }
            if (n_slices >= 3) {
                const double drift =
                    std::abs(e_end - e_start) / std::max(std::abs(e_start), 1e-12);
                worst = std::max(worst, drift);
            }
            ens.terminal[traj] = x_curr;
        }
        chunk_worst_drift[chunk] = worst;
    });

    double worst_drift = 0.0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        worst_drift = std::max(worst_drift, chunk_worst_drift[c]);
        for (std::size_t t = 0; t < n_times; ++t) {
            ens.sum_x[t] += chunk_sum_x[c][t];
            ens.sum_x2[t] += chunk_sum_x2[c][t];
        }
    }
    if (worst_drift > opt.energy_drift_tolerance)
        throw ConfigError("classical_evolve: relative energy drift " + std::to_string(worst_drift) +
                          " exceeds tolerance; reduce the slice length");
    return ens;
}

}  // namespace qpl
