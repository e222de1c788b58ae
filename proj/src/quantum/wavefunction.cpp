#include "quantum/wavefunction.hpp"

#include <cmath>

#include "quantum/fft.hpp"

namespace qpl {

double WaveFunction::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s * grid.dx();
}

void WaveFunction::normalize() {
    const double n = std::sqrt(norm_sq());
    if (!(n > 0.0)) throw NumericalError("WaveFunction: cannot normalize zero state");
    for (auto& a : amp) a /= n;
}

double WaveFunction::mean_x() const {
    double s = 0.0;
    for (int i = 0; i < grid.size(); ++i)
        s += grid.x(i) * std::norm(amp[static_cast<std::size_t>(i)]);
    return s * grid.dx();
}

double WaveFunction::mean_x2() const {
    double s = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.x(i);
        s += x * x * std::norm(amp[static_cast<std::size_t>(i)]);
    }
    return s * grid.dx();
}

std::vector<double> probability_density(const WaveFunction& psi) {
    std::vector<double> p(psi.amp.size());
    for (std::size_t i = 0; i < psi.amp.size(); ++i) p[i] = std::norm(psi.amp[i]);
    return p;
}

WaveFunction make_gaussian_packet(const SpatialGrid& grid, double x0, double p0,
                                  double sigma, double hbar) {
    if (!(sigma > 0.0)) throw UsageError("make_gaussian_packet: sigma must be positive");
    if (!(hbar > 0.0)) throw UsageError("make_gaussian_packet: hbar must be positive");

    WaveFunction psi(grid, hbar);
    const double norm_const = std::pow(2.0 * M_PI * sigma * sigma, -0.25);
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.x(i);
        const double d = x - x0;
        const double envelope = norm_const * std::exp(-d * d / (4.0 * sigma * sigma));
        const double phase = p0 * d / hbar;
        psi.amp[static_cast<std::size_t>(i)] =
            envelope * std::complex<double>(std::cos(phase), std::sin(phase));
    }

    const int n = grid.size();
    const double edge_mass =
        (std::norm(psi.amp[0]) + std::norm(psi.amp[static_cast<std::size_t>(n - 1)])) * grid.dx();
    if (edge_mass > 1e-10)
        throw UsageError("make_gaussian_packet: packet tail leaks beyond the grid");

    psi.normalize();
    return psi;
}

WaveFunction evolve_schrodinger(const WaveFunction& psi, const Potential1D& pot,
                                double dt, int steps) {
    if (steps < 0) throw UsageError("evolve_schrodinger: steps must be >= 0");
    WaveFunction out = psi;
    if (steps == 0) return out;
    const int n = out.grid.size();
    if (!is_power_of_two(n))
        throw UsageError("evolve_schrodinger: grid size must be a power of two");
    if (!(dt > 0.0)) throw UsageError("evolve_schrodinger: dt must be positive");

    const double hbar = out.hbar;
    const double m = pot.mass();
    const double dx = out.grid.dx();

    // half-step potential phase and full-step kinetic phase
    std::vector<std::complex<double>> vphase(static_cast<std::size_t>(n));
    std::vector<std::complex<double>> kphase(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double ang = -0.5 * dt * pot.eval(out.grid.x(i)) / hbar;
        vphase[static_cast<std::size_t>(i)] = {std::cos(ang), std::sin(ang)};
    }
    const double dk = 2.0 * M_PI / (static_cast<double>(n) * dx);
    for (int j = 0; j < n; ++j) {
        const int jj = (j <= n / 2) ? j : j - n;
        const double k = dk * static_cast<double>(jj);
        const double ang = -dt * hbar * k * k / (2.0 * m);
        kphase[static_cast<std::size_t>(j)] = {std::cos(ang), std::sin(ang)};
    }

    for (int s = 0; s < steps; ++s) {
        for (int i = 0; i < n; ++i) out.amp[static_cast<std::size_t>(i)] *= vphase[static_cast<std::size_t>(i)];
        fft(out.amp, -1);
        for (int j = 0; j < n; ++j) out.amp[static_cast<std::size_t>(j)] *= kphase[static_cast<std::size_t>(j)];
        fft(out.amp, +1);
        for (int i = 0; i < n; ++i) out.amp[static_cast<std::size_t>(i)] *= vphase[static_cast<std::size_t>(i)];

        const double drift = std::abs(out.norm_sq() - 1.0);
        if (drift > 1e-10 * static_cast<double>(s + 1) + 1e-12)
            throw NumericalError("evolve_schrodinger: norm drift exceeded tolerance");
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>> momentum_density(const WaveFunction& psi) {
    const int n = psi.grid.size();
    if (!is_power_of_two(n))
        throw UsageError("momentum_density: grid size must be a power of two");
    std::vector<std::complex<double>> a = psi.amp;
    fft(a, -1);
    const double dx = psi.grid.dx();
    const double dp = 2.0 * M_PI * psi.hbar / (static_cast<double>(n) * dx);
    std::vector<double> p(static_cast<std::size_t>(n)), rho(static_cast<std::size_t>(n));
    // reorder to ascending momentum, normalize sum * dp = 1
    double total = 0.0;
    for (int j = 0; j < n; ++j) total += std::norm(a[static_cast<std::size_t>(j)]);
    for (int j = 0; j < n; ++j) {
        const int jj = j - n / 2;                       // target momentum index
        const int src = (jj + n) % n;                   // FFT bin
        p[static_cast<std::size_t>(j)] = dp / psi.hbar * static_cast<double>(jj) * psi.hbar;
        rho[static_cast<std::size_t>(j)] = std::norm(a[static_cast<std::size_t>(src)]) / (total * dp);
    }
    return {p, rho};
}

}  // namespace qpl
