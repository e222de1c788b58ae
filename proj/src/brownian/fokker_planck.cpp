#include "brownian/fokker_planck.hpp"

#include <algorithm>
#include <cmath>

namespace qpl {
namespace {

// Bernoulli function w / (e^w - 1), stable near w = 0.
double bernoulli_fn(double w) {
    if (std::abs(w) < 1e-5) return 1.0 - 0.5 * w + w * w / 12.0;
    return w / std::expm1(w);
}

// Thomas solve of a tridiagonal system (a: sub, b: diag, c: super), in place.
void tridiag_solve(std::vector<double>& a, std::vector<double>& b, std::vector<double>& c,
                   std::vector<double>& rhs) {
    const std::size_t n = b.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - c[i] * rhs[i + 1]) / b[i];
}

}  // namespace

void normalize_density(std::vector<double>& p, double dx) {
    double s = 0.0;
    for (double v : p) s += v;
    s *= dx;
    if (!(s > 0.0)) throw NumericalError("normalize_density: non-positive mass");
    for (double& v : p) v /= s;
}

std::vector<double> boltzmann_density(const SpatialGrid& grid, const Potential1D& pot,
                                      const BrownianParams& params) {
    const double beta = params.beta();
    std::vector<double> p(static_cast<std::size_t>(grid.size()));
    double vmin = pot.eval(grid.x(0));
    for (int i = 1; i < grid.size(); ++i) vmin = std::min(vmin, pot.eval(grid.x(i)));
    for (int i = 0; i < grid.size(); ++i)
        p[static_cast<std::size_t>(i)] = std::exp(-beta * (pot.eval(grid.x(i)) - vmin));
    normalize_density(p, grid.dx());
    return p;
}

std::vector<double> fokker_planck_evolve(std::vector<double> p, const SpatialGrid& grid,
                                         const Potential1D& pot, const BrownianParams& params,
                                         const TimeGrid& time, const FokkerPlanckOptions& opt) {
    params.validate();
    const std::size_t n = static_cast<std::size_t>(grid.size());
    if (p.size() != n) throw UsageError("fokker_planck_evolve: density size mismatch");

    const double diffusion = params.diffusion();
    const double beta = params.beta();
    const double dx = grid.dx();

    int substeps = opt.substeps_per_slice;
    if (substeps <= 0)
        substeps = std::max(1, (400 + time.n_slices() - 1) / time.n_slices());
    const double dt = time.eps() / static_cast<double>(substeps);

    // Scharfetter-Gummel fluxes through the n-1 interior faces:
    //   G_{i+1/2} = (D/dx) [ B(-w_i) P_{i+1} - B(w_i) P_i ],  w_i = beta (V_{i+1} - V_i)
    std::vector<double> bm(n - 1), bp(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double w = beta * (pot.eval(grid.x(static_cast<int>(i) + 1)) -
                                 pot.eval(grid.x(static_cast<int>(i))));
        bm[i] = bernoulli_fn(-w);
        bp[i] = bernoulli_fn(w);
    }
    const double alpha = diffusion / (dx * dx);

    // dP_i/dt = alpha [ B(-w_i) P_{i+1} - B(w_i) P_i - B(-w_{i-1}) P_i ... ]
    // L encoded as tridiagonal (lo, di, up)
    std::vector<double> lo(n, 0.0), di(n, 0.0), up(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 < n) {  // face to the right
            di[i] -= alpha * bp[i];
            up[i] += alpha * bm[i];
        }
        if (i > 0) {  // face to the left
            di[i] -= alpha * bm[i - 1];
            lo[i] += alpha * bp[i - 1];
        }
    }

    const double initial_mass = [&] {
        double s = 0.0;
        for (double v : p) s += v;
        return s * dx;
    }();

    std::vector<double> rhs(n), a(n), b(n), c(n);
    const int total_steps = substeps * time.n_slices();
    for (int step = 0; step < total_steps; ++step) {
        // rhs = (I + dt/2 L) p
        for (std::size_t i = 0; i < n; ++i) {
            double v = (1.0 + 0.5 * dt * di[i]) * p[i];
            if (i > 0) v += 0.5 * dt * lo[i] * p[i - 1];
            if (i + 1 < n) v += 0.5 * dt * up[i] * p[i + 1];
            rhs[i] = v;
        }
        // solve (I - dt/2 L) p' = rhs
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = (i > 0) ? -0.5 * dt * lo[i] : 0.0;
            b[i] = 1.0 - 0.5 * dt * di[i];
            c[i] = (i + 1 < n) ? -0.5 * dt * up[i] : 0.0;
        }
        tridiag_solve(a, b, c, rhs);
        p.swap(rhs);
    }

    double mass = 0.0, mn = p[0];
    for (double v : p) {
        mass += v;
        mn = std::min(mn, v);
    }
    mass *= dx;
    if (std::abs(mass - initial_mass) > opt.mass_tolerance)
        throw NumericalError("fokker_planck_evolve: mass drift " + std::to_string(mass - initial_mass));
    if (mn < opt.negativity_floor)
        throw NumericalError("fokker_planck_evolve: negative density " + std::to_string(mn));
    return p;
}

}  // namespace qpl
