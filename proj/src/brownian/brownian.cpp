#include "brownian/brownian.hpp"

#include <cmath>

#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace qpl {
namespace {

void check_stability(const BrownianParams& params, const Potential1D& pot,
                     const LangevinOptions& opt, double eps) {
    const SpatialGrid range = opt.stability_range.value_or(SpatialGrid(-10.0, 10.0, 201));
    const double stiffness = pot.max_abs_on_grid(range, 2);
    const double ratio = eps * stiffness / (params.mass * params.gamma);
    if (ratio >= opt.stability_limit)
        throw ConfigError("langevin_simulate: eps*max|V''|/(m gamma) = " + std::to_string(ratio) +
                          " violates the stability bound " + std::to_string(opt.stability_limit));
}

double draw_initial(const InitialSpec& initial, RngStream& rng) {
    switch (initial.kind) {
        case InitialSpec::Kind::delta: return initial.x0;
        case InitialSpec::Kind::gaussian: return rng.normal(initial.x0, initial.sigma);
    }
    return initial.x0;
}

template <bool PreDrawNoise>
TrajectoryEnsemble simulate(const BrownianParams& params, const Potential1D& pot,
                            const InitialSpec& initial, const TimeGrid& time,
                            std::size_t n_traj, std::uint64_t seed, const LangevinOptions& opt) {
    params.validate();
    const double eps = time.eps();
    check_stability(params, pot, opt, eps);

    const int n_slices = time.n_slices();
    const std::size_t n_times = static_cast<std::size_t>(n_slices + 1);
    const double inv_mg = 1.0 / (params.mass * params.gamma);
    const double noise_sd = std::sqrt(2.0 * params.diffusion() / eps);

    TrajectoryEnsemble ens(time);
    ens.n_traj = n_traj;
    ens.seed = seed;
    ens.terminal.resize(n_traj);
    ens.has_paths = opt.store_paths;
    if (opt.store_paths) ens.paths.resize(n_traj * n_times);

    const std::size_t n_chunks = (n_traj + kTrajectoryChunk - 1) / kTrajectoryChunk;
    std::vector<std::vector<double>> chunk_sum_x(n_chunks), chunk_sum_x2(n_chunks);

    parallel_chunks(n_traj, kTrajectoryChunk, opt.n_threads,
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto& sx = chunk_sum_x[chunk];
        auto& sx2 = chunk_sum_x2[chunk];
        sx.assign(n_times, 0.0);
        sx2.assign(n_times, 0.0);
        std::vector<double> noise;
        for (std::size_t traj = begin; traj < end; ++traj) {
            RngStream rng(seed, traj);
            double x = draw_initial(initial, rng);
            if constexpr (PreDrawNoise) {
                noise.resize(static_cast<std::size_t>(n_slices));
                for (int k = 0; k < n_slices; ++k)
                    noise[static_cast<std::size_t>(k)] = noise_sd * rng.normal();
            }
            sx[0] += x;
            sx2[0] += x * x;
            if (opt.store_paths) ens.paths[traj * n_times] = x;
            for (int k = 0; k < n_slices; ++k) {
                double r;
                if constexpr (PreDrawNoise)
                    r = noise[static_cast<std::size_t>(k)];
                else
                    r = noise_sd * rng.normal();
                x += eps * (-pot.eval(x, 1) * inv_mg + r);
                const std::size_t kt = static_cast<std::size_t>(k + 1);
                sx[kt] += x;
                sx2[kt] += x * x;
                if (opt.store_paths) ens.paths[traj * n_times + kt] = x;
            }
            ens.terminal[traj] = x;
        }
    });

    ens.sum_x.assign(n_times, 0.0);
    ens.sum_x2.assign(n_times, 0.0);
    for (std::size_t c = 0; c < n_chunks; ++c) {
        for (std::size_t t = 0; t < n_times; ++t) {
            ens.sum_x[t] += chunk_sum_x[c][t];
            ens.sum_x2[t] += chunk_sum_x2[c][t];
        }
    }
    return ens;
}

}  // namespace

TrajectoryEnsemble langevin_simulate(const BrownianParams& params, const Potential1D& pot,
                                     const InitialSpec& initial, const TimeGrid& time,
                                     std::size_t n_traj, std::uint64_t seed,
                                     const LangevinOptions& opt) {
    return simulate<false>(params, pot, initial, time, n_traj, seed, opt);
}

TrajectoryEnsemble langevin_simulate_functional_form(const BrownianParams& params,
                                                     const Potential1D& pot,
                                                     const InitialSpec& initial,
                                                     const TimeGrid& time, std::size_t n_traj,
                                                     std::uint64_t seed,
                                                     const LangevinOptions& opt) {
    return simulate<true>(params, pot, initial, time, n_traj, seed, opt);
}

NoiseMoments noise_moment_check(std::span<const double> samples, int max_lag) {
    const std::size_t n = samples.size();
    if (n < 10000) throw UsageError("noise_moment_check: need at least 1e4 samples");
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n)
        throw UsageError("noise_moment_check: bad max_lag");

    NoiseMoments out;
    out.n = n;
    double s = 0.0;
    for (double v : samples) s += v;
    out.mean = s / static_cast<double>(n);

    out.autocov.resize(static_cast<std::size_t>(max_lag) + 1);
    for (int lag = 0; lag <= max_lag; ++lag) {
        double acc = 0.0;
        const std::size_t m = n - static_cast<std::size_t>(lag);
        for (std::size_t i = 0; i < m; ++i)
            acc += (samples[i] - out.mean) * (samples[i + static_cast<std::size_t>(lag)] - out.mean);
        out.autocov[static_cast<std::size_t>(lag)] = acc / static_cast<double>(m);
    }
    out.se_mean = std::sqrt(out.autocov[0] / static_cast<double>(n));
    return out;
}

}  // namespace qpl
