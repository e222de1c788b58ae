#include "semiclassical/quasi_langevin.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "semiclassical/classical.hpp"
#include "semiclassical/estimators.hpp"
#include "semiclassical/wigner_sampling.hpp"

namespace qpl {

SignedEnsemble quasi_langevin_simulate(const WignerState& w0, const Potential1D& pot,
                                       double hbar, const TimeGrid& time, std::size_t n_traj,
                                       const QuasiOptions& opt, std::uint64_t seed) {
    if (!(hbar > 0.0)) throw ConfigError("quasi_langevin_simulate: hbar must be positive");
    const WignerSampler sampler(w0);
    const AiryProposal proposal(opt.proposal_truncation, opt.proposal_table_points);

    const int n_slices = time.n_slices();
    const std::size_t n_times = static_cast<std::size_t>(n_slices + 1);
    const double eps = time.eps();
    const double inv_m = 1.0 / pot.mass();
    const double r_scale = std::pow(eps, -2.0 / 3.0);  // R = u / eps^{2/3}

    SignedEnsemble ens(time);
    ens.n_traj = n_traj;
    ens.seed = seed;
    ens.terminal.resize(n_traj);
    ens.sign.resize(n_traj);
    ens.log_magnitude.resize(n_traj);
    ens.initials.resize(n_traj);
    ens.slice_draws.assign(static_cast<std::size_t>(n_slices), 0);
    ens.slice_negative.assign(static_cast<std::size_t>(n_slices), 0);

    const std::size_t n_chunks = (n_traj + kTrajectoryChunk - 1) / kTrajectoryChunk;
    struct ChunkCounters {
        std::vector<std::size_t> draws, neg;
        std::size_t degenerate = 0, nondegenerate = 0;
    };
    std::vector<ChunkCounters> counters(n_chunks);

    parallel_chunks(n_traj, kTrajectoryChunk, opt.n_threads,
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto& cc = counters[chunk];
        cc.draws.assign(static_cast<std::size_t>(n_slices), 0);
        cc.neg.assign(static_cast<std::size_t>(n_slices), 0);
        for (std::size_t traj = begin; traj < end; ++traj) {
            RngStream rng(seed, traj);
            const PhasePoint ic = sampler.sample(rng);
            ens.initials[traj] = ic;

            double x_prev = ic.x;
            double x_curr = x_prev + eps * ic.p * inv_m;
            double log_mag = 0.0;
            int sgn = +1;

            for (int k = 1; k < n_slices; ++k) {
                const double third = pot.eval(x_curr, 3);
                double x_next;
                if (std::abs(third) < opt.degenerate_threshold) {
                    // phi -> 0: the slice constraint is the bare classical one
                    x_next = stormer_step(x_prev, x_curr, pot.eval(x_curr, 1), 0.0, eps, inv_m);
                    ++cc.degenerate;
                } else {
                    const AiryProposal::Draw d = proposal.sample(rng);
                    const double phi_x = std::cbrt(third / (8.0 * hbar));
                    const double r = d.u * r_scale;
                    x_next = stormer_step(x_prev, x_curr, pot.eval(x_curr, 1),
                                          hbar * phi_x * r, eps, inv_m);
                    sgn *= d.sign;
                    if (opt.apply_phi_measure)
                        log_mag -= std::log(std::max(std::abs(phi_x), opt.phi_min));
                    ++cc.nondegenerate;
                    ++cc.draws[static_cast<std::size_t>(k)];
                    if (d.sign < 0) ++cc.neg[static_cast<std::size_t>(k)];
                }
                x_prev = x_curr;
                x_curr = x_next;
            }
            ens.terminal[traj] = x_curr;
            ens.sign[traj] = static_cast<std::int8_t>(sgn);
            ens.log_magnitude[traj] = log_mag;
        }
    });
    (void)n_times;

    for (const auto& cc : counters) {
        ens.degenerate_count += cc.degenerate;
        ens.nondegenerate_count += cc.nondegenerate;
        for (int k = 0; k < n_slices; ++k) {
            ens.slice_draws[static_cast<std::size_t>(k)] += cc.draws[static_cast<std::size_t>(k)];
            ens.slice_negative[static_cast<std::size_t>(k)] += cc.neg[static_cast<std::size_t>(k)];
        }
    }

    if (opt.mean_sign_floor > 0.0 && n_traj > 0 && ens.nondegenerate_count > 0) {
        const SignDiagnostics diag = sign_diagnostics(ens);
        // collapsed when below the floor or statistically indistinguishable from 0
        if (std::abs(diag.mean_sign) < std::max(opt.mean_sign_floor, 3.0 * diag.mean_sign_se)) {
            throw SignCollapseError(
                "quasi_langevin_simulate: ensemble mean sign " + std::to_string(diag.mean_sign) +
                    " fell below the floor " + std::to_string(opt.mean_sign_floor) +
                    " (N = " + std::to_string(n_slices) + " slices, truncation L = " +
                    std::to_string(opt.proposal_truncation) +
                    "); the Airy weight is not positive and its cancellations have destroyed " +
                    "the signed estimator",
                diag.mean_sign, diag.effective_sample_size, diag.negative_slice_fraction);
        }
    }
    return ens;
}

}  // namespace qpl
