#include "run/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "brownian/brownian.hpp"
#include "brownian/fokker_planck.hpp"
#include "brownian/path_propagator.hpp"
#include "core/errors.hpp"
#include "functionals/airy.hpp"
#include "io/svg.hpp"
#include "io/table.hpp"
#include "quantum/density_matrix.hpp"
#include "quantum/wavefunction.hpp"
#include "quantum/wigner.hpp"
#include "semiclassical/classical.hpp"
#include "semiclassical/estimators.hpp"
#include "semiclassical/quasi_langevin.hpp"
#include "semiclassical/wigner_sampling.hpp"

namespace qpl {
namespace {

namespace fs = std::filesystem;

std::string num(double v, const char* spec = "%.10g") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

struct Reporter {
    std::ostringstream out;
    std::vector<std::string> files;
    fs::path dir;

    void line(const std::string& s = "") { out << s << "\n"; }
    void kv(const std::string& k, const std::string& v) { out << k << ": " << v << "\n"; }
    void kv(const std::string& k, double v) { kv(k, num(v)); }

    void add_table(const std::string& name, const Table& t) {
        const fs::path p = dir / name;
        write_table(p, t);
        files.push_back(p.string());
    }
    void add_plot(const std::string& name, const std::string& title, const std::string& xl,
                  const std::string& yl, const std::vector<PlotSeries>& series) {
        const fs::path p = dir / name;
        write_line_plot_svg(p, title, xl, yl, series);
        files.push_back(p.string());
    }
};

std::map<std::string, std::string> base_meta(const RunConfig& cfg) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    return {{"config_hash", hash},
            {"seed", std::to_string(cfg.seed)},
            {"experiment", to_string(cfg.experiment)}};
}

// cell-averaged rebinning of a grid density onto uniform bins
std::vector<double> bin_average(const SpatialGrid& grid, const std::vector<double>& density,
                                double lo, double hi, int bins) {
    std::vector<double> out(static_cast<std::size_t>(bins), 0.0);
    const double binw = (hi - lo) / bins;
    constexpr int kSub = 8;
    for (int b = 0; b < bins; ++b) {
        double acc = 0.0;
        for (int s = 0; s < kSub; ++s) {
            const double x = lo + binw * (b + (s + 0.5) / kSub);
            // linear interpolation, zero outside
            if (x < grid.x_min() || x > grid.x_max()) continue;
            const double u = (x - grid.x_min()) / grid.dx();
            const int i = std::min(static_cast<int>(u), grid.size() - 2);
            const double f = u - i;
            acc += (1.0 - f) * density[static_cast<std::size_t>(i)] +
                   f * density[static_cast<std::size_t>(i + 1)];
        }
        out[static_cast<std::size_t>(b)] = acc / kSub;
    }
    return out;
}

std::vector<double> histogram_density(const std::vector<double>& samples, double lo, double hi,
                                      int bins) {
    std::vector<double> h(static_cast<std::size_t>(bins), 0.0);
    const double binw = (hi - lo) / bins;
    std::size_t inside = 0;
    for (double x : samples) {
        if (x < lo || x >= hi) continue;
        const int b = std::min(static_cast<int>((x - lo) / binw), bins - 1);
        h[static_cast<std::size_t>(b)] += 1.0;
        ++inside;
    }
    if (inside == 0) throw NumericalError("histogram_density: no samples inside range");
    for (double& v : h) v /= static_cast<double>(samples.size()) * binw;
    return h;
}

double l1_binned(const std::vector<double>& a, const std::vector<double>& b, double binw) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s * binw;
}

std::vector<double> bin_centers(double lo, double hi, int bins) {
    std::vector<double> c(static_cast<std::size_t>(bins));
    const double binw = (hi - lo) / bins;
    for (int b = 0; b < bins; ++b) c[static_cast<std::size_t>(b)] = lo + binw * (b + 0.5);
    return c;
}

struct MomentTrack {
    std::vector<double> t, mean, var;
};

// split-step evolution sampled at n_outputs intermediate times
MomentTrack quantum_moment_track(const WaveFunction& psi0, const Potential1D& pot,
                                 double t_total, int steps, int n_outputs) {
    MomentTrack track;
    WaveFunction psi = psi0;
    const double dt = t_total / steps;
    int done = 0;
    track.t.push_back(0.0);
    track.mean.push_back(psi.mean_x());
    track.var.push_back(psi.var_x());
    for (int o = 1; o <= n_outputs; ++o) {
        const int target = static_cast<int>(static_cast<long long>(steps) * o / n_outputs);
        if (target > done) {
            psi = evolve_schrodinger(psi, pot, dt, target - done);
            done = target;
        }
        track.t.push_back(dt * done);
        track.mean.push_back(psi.mean_x());
        track.var.push_back(psi.var_x());
    }
    return track;
}

// ---------------------------------------------------------------------------

void run_airy_figure(const RunConfig& cfg, Reporter& rep) {
    const int n = cfg.airy.n_points;
    std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
    const double dx = (cfg.airy.x_max - cfg.airy.x_min) / (n - 1);
    int negative_points = 0;
    double min_val = 1e300, min_at = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = cfg.airy.x_min + dx * i;
        const double a = airy_ai(x);
        xs[static_cast<std::size_t>(i)] = x;
        ys[static_cast<std::size_t>(i)] = a;
        if (a < 0.0) ++negative_points;
        if (a < min_val) {
            min_val = a;
            min_at = x;
        }
    }

    Table t;
    t.kind = "airy";
    t.meta = base_meta(cfg);
    t.columns = {"xi", "ai"};
    for (int i = 0; i < n; ++i)
        t.rows.push_back({xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(i)]});
    rep.add_table("airy_function.csv", t);
    rep.add_plot("airy_function.svg", "Airy function Ai(xi)", "xi", "Ai(xi)",
                 {{"Ai", xs, ys, ""}});

    rep.line("[airy]");
    rep.kv("points", static_cast<double>(n));
    rep.kv("ai_at_zero", airy_ai(0.0));
    rep.kv("first_zero", airy_first_zero());
    rep.kv("min_value", min_val);
    rep.kv("min_at", min_at);
    rep.kv("points_below_zero", static_cast<double>(negative_points));
    rep.line(negative_points > 0
                 ? "the plotted range contains intervals with Ai(xi) < 0"
                 : "warning: no negative values in the plotted range");
}

void run_brownian_triple(const RunConfig& cfg, Reporter& rep) {
    const Potential1D pot = build_potential(cfg);
    BrownianParams params{cfg.constants.mass, cfg.brownian.gamma, cfg.brownian.temperature,
                          cfg.constants.k_boltzmann};
    const SpatialGrid grid(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n_points);
    const TimeGrid time(cfg.time.t_start, cfg.time.t_end, cfg.time.n_slices);
    const InitialSpec init = InitialSpec::gaussian(cfg.initial_state.x0, cfg.initial_state.sigma);

    LangevinOptions lopt;
    lopt.n_threads = cfg.threads;
    lopt.stability_range = grid;
    const auto ens = langevin_simulate(params, pot, init, time,
                                       static_cast<std::size_t>(cfg.ensemble.n_trajectories),
                                       cfg.seed, lopt);

    std::vector<double> p0(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) {
        const double d = grid.x(i) - cfg.initial_state.x0;
        p0[static_cast<std::size_t>(i)] =
            std::exp(-0.5 * d * d / (cfg.initial_state.sigma * cfg.initial_state.sigma));
    }
    normalize_density(p0, grid.dx());

    FokkerPlanckOptions fopt;
    fopt.substeps_per_slice = cfg.fokker_planck.substeps_per_slice;
    const auto p_fp = fokker_planck_evolve(p0, grid, pot, params, time, fopt);

    PropagatorOptions popt;
    popt.drift = cfg.pathintegral.drift == "midpoint" ? PropagatorOptions::Drift::midpoint
                                                      : PropagatorOptions::Drift::pre_point;
    const auto j_matrix = brownian_pathintegral_propagator(params, pot, grid, time, popt);
    const auto p_pi = apply_propagator(j_matrix, grid, p0);

    const int bins = cfg.ensemble.histogram_bins;
    const double lo = grid.x_min(), hi = grid.x_max();
    const double binw = (hi - lo) / bins;
    const auto h_lv = histogram_density(ens.terminal, lo, hi, bins);
    const auto h_fp = bin_average(grid, p_fp, lo, hi, bins);
    const auto h_pi = bin_average(grid, p_pi, lo, hi, bins);

    const double l1_lv_fp = l1_binned(h_lv, h_fp, binw);
    const double l1_lv_pi = l1_binned(h_lv, h_pi, binw);
    const double l1_fp_pi = l1_binned(h_fp, h_pi, binw);

    const auto centers = bin_centers(lo, hi, bins);
    auto meta = base_meta(cfg);
    rep.add_table("langevin_density.csv", density_table(centers, h_lv, meta));
    rep.add_table("fokker_planck_density.csv", density_table(centers, h_fp, meta));
    rep.add_table("pathintegral_density.csv", density_table(centers, h_pi, meta));
    rep.add_plot("brownian_triple.svg", "Overdamped Brownian motion: three routes", "x", "P(x, t_b)",
                 {{"Langevin histogram", centers, h_lv, ""},
                  {"Fokker-Planck", centers, h_fp, ""},
                  {"path integral", centers, h_pi, ""}});

    rep.line("[brownian-triple]");
    rep.kv("n_trajectories", static_cast<double>(ens.n_traj));
    rep.kv("diffusion_coefficient", params.diffusion());
    rep.kv("langevin_mean", ens.mean_at(time.n_slices()));
    rep.kv("langevin_var", ens.var_at(time.n_slices()));
    rep.kv("L1(langevin,fokker_planck)", l1_lv_fp);
    rep.kv("L1(langevin,pathintegral)", l1_lv_pi);
    rep.kv("L1(fokker_planck,pathintegral)", l1_fp_pi);
}

void run_quantum_reference(const RunConfig& cfg, Reporter& rep) {
    const Potential1D pot = build_potential(cfg);
    const SpatialGrid grid(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n_points);
    const TimeGrid time(cfg.time.t_start, cfg.time.t_end, cfg.time.n_slices);
    const double t_total = time.t_b() - time.t_a();

    const WaveFunction psi0 = make_gaussian_packet(grid, cfg.initial_state.x0,
                                                   cfg.initial_state.p0, cfg.initial_state.sigma,
                                                   cfg.constants.hbar);

    // split-step reference
    const int steps = cfg.quantum.reference_steps;
    const WaveFunction psi_b = evolve_schrodinger(psi0, pot, t_total / steps, steps);
    const auto p_ref = probability_density(psi_b);

    // density-matrix transfer kernel route (aligned xi grid: the frame change
    // is exact index arithmetic)
    const DensityMatrixXY rho0 = to_relative_frame(psi0, aligned_xi_grid(grid));
    const TransferResult tr = propagate_density_matrix_pathintegral(rho0, pot, time);
    const auto p_diag = tr.rho.diagonal();

    // Wigner function of the initial state
    double imag_residue = 0.0;
    const WignerState w0 = wigner_transform(rho0, &imag_residue);
    const auto marginal = w0.x_marginal();
    const auto p_init = probability_density(psi0);
    double marginal_err = 0.0;
    for (int i = 0; i < grid.size(); ++i)
        marginal_err = std::max(marginal_err,
                                std::abs(marginal[static_cast<std::size_t>(i)] -
                                         p_init[static_cast<std::size_t>(i)]));

    double l1 = 0.0;
    for (int i = 0; i < grid.size(); ++i)
        l1 += std::abs(p_ref[static_cast<std::size_t>(i)] - p_diag[static_cast<std::size_t>(i)]);
    l1 *= grid.dx();

    auto meta = base_meta(cfg);
    const auto xs = grid.points();
    rep.add_table("density_reference.csv", density_table(xs, p_ref, meta));
    rep.add_table("density_pathintegral.csv", density_table(xs, p_diag, meta));
    {
        // final state in the shared delimited-text format
        Table wf;
        wf.kind = "wavefunction";
        wf.meta = meta;
        wf.meta["hbar"] = num(cfg.constants.hbar, "%.17g");
        wf.columns = {"x", "re", "im"};
        for (int i = 0; i < grid.size(); ++i)
            wf.rows.push_back({grid.x(i), psi_b.amp[static_cast<std::size_t>(i)].real(),
                               psi_b.amp[static_cast<std::size_t>(i)].imag()});
        rep.add_table("wavefunction_final.csv", wf);
    }
    Table wt;
    wt.kind = "wigner";
    wt.meta = meta;
    wt.columns = {"x", "p", "w"};
    for (int i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < w0.p_points.size(); ++j)
            wt.rows.push_back({grid.x(i), w0.p_points[j], w0.at(i, static_cast<int>(j))});
    rep.add_table("wigner_initial.csv", wt);
    rep.add_plot("density_comparison.svg", "Quantum density: split-step vs transfer kernel", "x",
                 "P(x, t_b)",
                 {{"split-step", xs, p_ref, ""}, {"transfer kernel", xs, p_diag, ""}});

    rep.line("[quantum-reference]");
    rep.kv("reference_steps", static_cast<double>(steps));
    rep.kv("pathintegral_slices", static_cast<double>(time.n_slices()));
    rep.kv("L1(diagonal,reference)", l1);
    rep.kv("max_trace_drift", tr.max_trace_drift);
    rep.kv("wigner_min", w0.min_value());
    rep.kv("wigner_mass", w0.total_mass());
    rep.kv("wigner_marginal_max_error", marginal_err);
    rep.kv("wigner_imag_residue", imag_residue);
}

void run_classical_limit(const RunConfig& cfg, Reporter& rep) {
    const Potential1D pot = build_potential(cfg);
    const SpatialGrid grid(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n_points);
    const TimeGrid time(cfg.time.t_start, cfg.time.t_end, cfg.time.n_slices);
    const double t_total = time.t_b() - time.t_a();

    const WaveFunction psi0 = make_gaussian_packet(grid, cfg.initial_state.x0,
                                                   cfg.initial_state.p0, cfg.initial_state.sigma,
                                                   cfg.constants.hbar);
    const WignerState w0 = wigner_transform(to_relative_frame(psi0, aligned_xi_grid(grid)));

    const std::size_t n_traj = static_cast<std::size_t>(cfg.ensemble.n_trajectories);
    const auto initials = sample_initial_conditions(w0, n_traj, cfg.seed);

    ClassicalOptions copt;
    copt.n_threads = cfg.threads;
    const auto ens = classical_evolve(initials, pot, time, copt);

    const int outputs = 40;
    const auto qtrack = quantum_moment_track(psi0, pot, t_total, cfg.quantum.reference_steps, outputs);

    Table mt;
    mt.kind = "moments";
    mt.meta = base_meta(cfg);
    mt.columns = {"t", "classical_mean", "classical_var", "quantum_mean", "quantum_var",
                  "se_mean", "se_var"};
    double worst_mean_dev = 0.0, worst_var_dev = 0.0;
    std::vector<double> ts, cm, qm;
    for (int o = 0; o <= outputs; ++o) {
        const double t = qtrack.t[static_cast<std::size_t>(o)];
        const int k = static_cast<int>(std::lround(t / time.eps()));
        const double mean_cl = ens.mean_at(k);
        const double var_cl = ens.var_at(k);
        const double se_mean = std::sqrt(var_cl / static_cast<double>(n_traj));
        const double se_var = var_cl * std::sqrt(2.0 / (static_cast<double>(n_traj) - 1.0));
        const double qmean = qtrack.mean[static_cast<std::size_t>(o)];
        const double qvar = qtrack.var[static_cast<std::size_t>(o)];
        worst_mean_dev = std::max(worst_mean_dev, std::abs(mean_cl - qmean) / se_mean);
        worst_var_dev = std::max(worst_var_dev, std::abs(var_cl - qvar) / se_var);
        mt.rows.push_back({t, mean_cl, var_cl, qmean, qvar, se_mean, se_var});
        ts.push_back(t);
        cm.push_back(mean_cl);
        qm.push_back(qmean);
    }
    rep.add_table("moments.csv", mt);
    rep.add_plot("mean_position.svg", "Classical ensemble vs quantum oracle", "t", "<x>(t)",
                 {{"classical", ts, cm, ""}, {"quantum", ts, qm, ""}});

    rep.line("[classical-limit]");
    rep.kv("n_trajectories", static_cast<double>(n_traj));
    rep.kv("max_mean_deviation_over_se", worst_mean_dev);
    rep.kv("max_var_deviation_over_se", worst_var_dev);
    rep.line(worst_mean_dev < 3.0 && worst_var_dev < 3.0
                 ? "classical moments agree with the quantum oracle within 3 standard errors"
                 : "warning: classical moments deviate beyond 3 standard errors");
}

void run_quasi_langevin(const RunConfig& cfg, Reporter& rep) {
    const Potential1D pot = build_potential(cfg);
    const SpatialGrid grid(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n_points);
    const TimeGrid time(cfg.time.t_start, cfg.time.t_end, cfg.time.n_slices);
    const double hbar = cfg.constants.hbar;

    const WaveFunction psi0 = make_gaussian_packet(grid, cfg.initial_state.x0,
                                                   cfg.initial_state.p0, cfg.initial_state.sigma,
                                                   hbar);
    const WignerState w0 = wigner_transform(to_relative_frame(psi0, aligned_xi_grid(grid)));

    QuasiOptions qopt;
    qopt.proposal_truncation = cfg.proposal.truncation;
    qopt.proposal_table_points = cfg.proposal.table_points;
    qopt.phi_min = cfg.proposal.phi_min;
    qopt.apply_phi_measure = cfg.proposal.apply_phi_measure;
    qopt.mean_sign_floor = cfg.proposal.mean_sign_floor;
    qopt.degenerate_threshold = cfg.proposal.degenerate_threshold;
    qopt.n_threads = cfg.threads;

    const std::size_t n_traj = static_cast<std::size_t>(cfg.ensemble.n_trajectories);
    rep.line("[quasi-langevin]");
    rep.kv("n_trajectories", static_cast<double>(n_traj));
    rep.kv("n_slices", static_cast<double>(time.n_slices()));
    rep.kv("proposal_truncation", qopt.proposal_truncation);
    rep.kv("hbar", hbar);

    // the simulation may legitimately fail with sign collapse; report and rethrow
    SignedEnsemble ens = [&]() {
        try {
            return quasi_langevin_simulate(w0, pot, hbar, time, n_traj, qopt, cfg.seed);
        } catch (const SignCollapseError& e) {
            rep.line();
            rep.line("SIGN COLLAPSE");
            rep.kv("mean_sign", e.mean_sign);
            rep.kv("mean_sign_floor", qopt.mean_sign_floor);
            rep.kv("effective_sample_size", e.effective_sample_size);
            rep.kv("negative_slice_fraction", e.negative_slice_fraction);
            rep.kv("condition", "t_b - t_a = " + num(time.t_b() - time.t_a()) + ", N = " +
                                    std::to_string(time.n_slices()) + ", hbar = " + num(hbar) +
                                    ", truncation L = " + num(qopt.proposal_truncation));
            rep.line("the Airy-functional weight is not positive-definite; at these parameters its");
            rep.line("sign cancellations leave no usable signed estimator (no stochastic process");
            rep.line("reproduces this evolution)");
            throw;
        }
    }();

    const SignDiagnostics diag = sign_diagnostics(ens);
    rep.kv("mean_sign", diag.mean_sign);
    rep.kv("effective_sample_size", diag.effective_sample_size);
    rep.kv("negative_slice_fraction", diag.negative_slice_fraction);
    rep.line("degenerate classical branch taken on " + num(100.0 * diag.degenerate_fraction) +
             "% of slices");

    Table st;
    st.kind = "sign-diagnostics";
    st.meta = base_meta(cfg);
    st.columns = {"slice", "draws", "negative_fraction"};
    std::vector<double> slice_idx, neg_frac;
    for (std::size_t k = 0; k < ens.slice_draws.size(); ++k) {
        st.rows.push_back({static_cast<double>(k), static_cast<double>(ens.slice_draws[k]),
                           diag.per_slice_negative_fraction[k]});
        slice_idx.push_back(static_cast<double>(k));
        neg_frac.push_back(diag.per_slice_negative_fraction[k]);
    }
    rep.add_table("sign_diagnostics.csv", st);
    rep.add_plot("sign_diagnostics.svg", "Negative-sign draw fraction by slice", "slice",
                 "negative fraction", {{"negative fraction", slice_idx, neg_frac, ""}});

    if (cfg.ensemble.export_trajectories) {
        Table et;
        et.kind = "signed-ensemble";
        et.meta = base_meta(cfg);
        et.columns = {"trajectory", "x_final", "sign", "log_magnitude"};
        const std::size_t cap =
            std::min<std::size_t>(n_traj, static_cast<std::size_t>(cfg.ensemble.export_max));
        for (std::size_t i = 0; i < cap; ++i)
            et.rows.push_back({static_cast<double>(i), ens.terminal[i],
                               static_cast<double>(ens.sign[i]), ens.log_magnitude[i]});
        rep.add_table("signed_ensemble.csv", et);
    }

    // quantum oracle moments on the dedicated oracle grid
    const SpatialGrid ogrid(cfg.oracle.x_min, cfg.oracle.x_max, cfg.oracle.n_points);
    const WaveFunction opsi0 = make_gaussian_packet(ogrid, cfg.initial_state.x0,
                                                    cfg.initial_state.p0, cfg.initial_state.sigma,
                                                    hbar);
    const double t_total = time.t_b() - time.t_a();
    const WaveFunction opsi = evolve_schrodinger(opsi0, pot, t_total / cfg.oracle.steps,
                                                 cfg.oracle.steps);

    const auto est_x = ratio_estimate(ens, [](double x) { return x; });
    const auto est_x2 = ratio_estimate(ens, [](double x) { return x * x; });
    const double qx = opsi.mean_x();
    const double qx2 = opsi.mean_x2();

    rep.kv("mean_x", est_x.value);
    rep.kv("mean_x_se", est_x.std_error);
    rep.kv("oracle_mean_x", qx);
    rep.kv("mean_x_deviation_over_se", std::abs(est_x.value - qx) / est_x.std_error);
    rep.kv("mean_x2", est_x2.value);
    rep.kv("mean_x2_se", est_x2.std_error);
    rep.kv("oracle_mean_x2", qx2);
    rep.kv("mean_x2_deviation_over_se", std::abs(est_x2.value - qx2) / est_x2.std_error);

    // terminal signed density against the oracle density
    const int bins = cfg.ensemble.histogram_bins;
    const double lo = cfg.grid.x_min, hi = cfg.grid.x_max;
    const auto density = signed_density_estimate(ens, lo, hi, bins);
    const auto centers = bin_centers(lo, hi, bins);
    const auto p_oracle = probability_density(opsi);
    const auto oracle_binned = bin_average(ogrid, p_oracle, lo, hi, bins);
    rep.add_table("signed_density.csv", density_table(centers, density, base_meta(cfg)));
    rep.add_table("oracle_density.csv", density_table(centers, oracle_binned, base_meta(cfg)));
    rep.add_plot("density_comparison.svg", "Quasi-Langevin signed density vs quantum oracle", "x",
                 "P(x, t_b)",
                 {{"signed estimate", centers, density, ""}, {"oracle", centers, oracle_binned, ""}});
}

}  // namespace

RunResult run_experiment(const RunConfig& cfg, const fs::path& out_dir) {
    RunResult result;
    Reporter rep;
    rep.dir = out_dir.empty() ? fs::path(cfg.out_dir) : out_dir;

    std::error_code ec;
    fs::create_directories(rep.dir, ec);
    if (ec) {
        result.exit_code = kExitConfig;
        result.report = "cannot create output directory " + rep.dir.string();
        return result;
    }

    rep.line("qpathlab report");
    rep.kv("experiment", to_string(cfg.experiment));
    {
        char hash[32];
        std::snprintf(hash, sizeof(hash), "%016llx",
                      static_cast<unsigned long long>(config_hash(cfg)));
        rep.kv("config_hash", std::string(hash));
    }
    rep.kv("seed", static_cast<double>(cfg.seed));
    rep.line();

    // the effective config is always written next to the results
    {
        const fs::path p = rep.dir / "config.json";
        std::ofstream f(p);
        f << serialize_config(cfg) << "\n";
        rep.files.push_back(p.string());
    }

    try {
        switch (cfg.experiment) {
            case ExperimentKind::airy_figure: run_airy_figure(cfg, rep); break;
            case ExperimentKind::brownian_triple: run_brownian_triple(cfg, rep); break;
            case ExperimentKind::quantum_reference: run_quantum_reference(cfg, rep); break;
            case ExperimentKind::classical_limit: run_classical_limit(cfg, rep); break;
            case ExperimentKind::quasi_langevin: run_quasi_langevin(cfg, rep); break;
        }
        result.exit_code = kExitOk;
    } catch (const SignCollapseError& e) {
        rep.line();
        rep.kv("error", std::string("sign-collapse: ") + e.what());
        result.exit_code = kExitSignCollapse;
    } catch (const ConfigError& e) {
        rep.line();
        rep.kv("error", std::string("config: ") + e.what());
        result.exit_code = kExitConfig;
    } catch (const UsageError& e) {
        rep.line();
        rep.kv("error", std::string("usage: ") + e.what());
        result.exit_code = kExitConfig;
    } catch (const NumericalError& e) {
        rep.line();
        rep.kv("error", std::string("numerical: ") + e.what());
        result.exit_code = kExitNumerical;
    } catch (const std::exception& e) {
        rep.line();
        rep.kv("error", std::string("internal: ") + e.what());
        result.exit_code = kExitInternal;
    }

    result.report = rep.out.str();
    result.files_written = rep.files;
    const fs::path rp = rep.dir / "report.txt";
    std::ofstream f(rp);
    f << result.report;
    result.files_written.push_back(rp.string());
    return result;
}

DensityComparison compare_density_files(const fs::path& file_a, const fs::path& file_b,
                                        const std::optional<fs::path>& dump) {
    const Table ta = read_table(file_a);
    const Table tb = read_table(file_b);
    const auto xa = ta.column("x");
    const auto xb = tb.column("x");
    const auto da = ta.column("density");
    const auto db = tb.column("density");
    if (xa.size() != xb.size())
        throw UsageError("compare_densities: grids differ in size");
    for (std::size_t i = 0; i < xa.size(); ++i)
        if (std::abs(xa[i] - xb[i]) > 1e-9 * (1.0 + std::abs(xa[i])))
            throw UsageError("compare_densities: grids do not match at row " + std::to_string(i));
    if (xa.size() < 2) throw UsageError("compare_densities: need at least 2 rows");

    const double dx = xa[1] - xa[0];
    DensityComparison out;
    double cum = 0.0;
    Table diff;
    diff.kind = "density-diff";
    diff.columns = {"x", "difference"};
    for (std::size_t i = 0; i < xa.size(); ++i) {
        const double d = da[i] - db[i];
        out.l1 += std::abs(d) * dx;
        out.linf = std::max(out.linf, std::abs(d));
        cum += d * dx;
        out.ks = std::max(out.ks, std::abs(cum));
        diff.rows.push_back({xa[i], d});
    }
    if (dump) write_table(*dump, diff);
    return out;
}

}  // namespace qpl
