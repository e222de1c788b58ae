#pragma once

#include <cstdint>
#include <vector>

#include "core/grids.hpp"
#include "core/potential.hpp"
#include "core/trajectory.hpp"
#include "functionals/airy_proposal.hpp"
#include "quantum/wigner.hpp"

namespace qpl {

struct QuasiOptions {
    double proposal_truncation = 20.0;  // L of the |Ai| proposal support
    int proposal_table_points = 200001;
    double degenerate_threshold = 1e-10;  // |V'''| below this -> classical slice
    double phi_min = 1e-8;                // guard for the 1/phi measure factor
    // Off by default: sampling R directly absorbs the 1/phi measure factor
    // into the delta-constraint Jacobian (they cancel).  The toggle exposes
    // the alternative bookkeeping, whose x-dependent weights concentrate all
    // mass on trajectories grazing the zeros of V'''.
    bool apply_phi_measure = false;
    double mean_sign_floor = 0.01;        // <= 0 disables the collapse check
    bool store_paths = false;
    int n_threads = 0;
};

/// Trajectory ensemble carrying signed Airy-functional weights.
struct SignedEnsemble {
    TimeGrid time;
    std::size_t n_traj = 0;
    std::uint64_t seed = 0;

    std::vector<double> terminal;        // x(t_b)
    std::vector<std::int8_t> sign;       // accumulated weight sign per trajectory
    std::vector<double> log_magnitude;   // accumulated log weight magnitude
    std::vector<PhasePoint> initials;    // (x_a, p_a) drawn from W0

    std::vector<std::size_t> slice_draws;     // proposal draws per interior slice
    std::vector<std::size_t> slice_negative;  // negative-sign draws per interior slice
    std::size_t degenerate_count = 0;         // slices taken on the classical branch
    std::size_t nondegenerate_count = 0;

    explicit SignedEnsemble(const TimeGrid& t) : time(t) {}

    double degenerate_fraction() const {
        const std::size_t total = degenerate_count + nondegenerate_count;
        return total == 0 ? 0.0 : static_cast<double>(degenerate_count) / static_cast<double>(total);
    }
};

/// Signed-weight realization of the quasi-Langevin process: Newton's equation
/// with the extra force hbar phi(x) R per slice, R drawn through the |Ai|
/// proposal (R = u / eps^{2/3}, u ~ |Ai|), the weight carrying sgn(Ai(u)) and
/// the 1/|phi| measure factor.  Slices with |V'''| under the threshold take
/// the deterministic classical update with unit weight.  If the ensemble mean
/// sign ends below the configured floor the run fails with SignCollapseError:
/// the regime where the signed measure stops being simulatable.
SignedEnsemble quasi_langevin_simulate(const WignerState& w0, const Potential1D& pot,
                                       double hbar, const TimeGrid& time, std::size_t n_traj,
                                       const QuasiOptions& opt, std::uint64_t seed);

}  // namespace qpl
