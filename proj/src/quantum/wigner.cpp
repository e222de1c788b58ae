#include "quantum/wigner.hpp"

#include <cmath>

namespace qpl {

double WignerState::total_mass() const {
    double s = 0.0;
    for (double v : w) s += v;
    return s * x_grid.dx() * dp;
}

std::vector<double> WignerState::x_marginal() const {
    const std::size_t np = p_points.size();
    std::vector<double> m(static_cast<std::size_t>(x_grid.size()), 0.0);
    for (int i = 0; i < x_grid.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < np; ++j) s += at(i, static_cast<int>(j));
        m[static_cast<std::size_t>(i)] = s * dp;
    }
    return m;
}

std::vector<double> WignerState::p_marginal() const {
    const std::size_t np = p_points.size();
    std::vector<double> m(np, 0.0);
    for (std::size_t j = 0; j < np; ++j) {
        double s = 0.0;
        for (int i = 0; i < x_grid.size(); ++i) s += at(i, static_cast<int>(j));
        m[j] = s * x_grid.dx();
    }
    return m;
}

double WignerState::min_value() const {
    double mn = w.empty() ? 0.0 : w[0];
    for (double v : w) mn = std::min(mn, v);
    return mn;
}

WignerState wigner_transform(const DensityMatrixXY& rho, double* imag_residue) {
    if (rho.edge_magnitude() > 1e-10)
        throw NumericalError("wigner_transform: density matrix has not decayed at the xi edges");

    const int nx = rho.x_grid.size();
    const int nxi = rho.xi_grid.size();
    const double dxi = rho.xi_grid.dx();
    const double hbar = rho.hbar;
    const double dp = 2.0 * M_PI * hbar / (static_cast<double>(nxi) * dxi);
    const int half = nxi / 2;

    std::vector<double> p(static_cast<std::size_t>(nxi));
    for (int j = 0; j < nxi; ++j)
        p[static_cast<std::size_t>(j)] = dp * static_cast<double>(j - half);

    WignerState w(rho.x_grid, std::move(p), dp, hbar);

    double worst_imag = 0.0;
    const double pre = dxi / (2.0 * M_PI * hbar);
    for (int i = 0; i < nx; ++i) {
        for (int jp = 0; jp < nxi; ++jp) {
            const double pj = w.p_points[static_cast<std::size_t>(jp)];
            std::complex<double> s{0.0, 0.0};
            for (int jx = 0; jx < nxi; ++jx) {
                const double phase = pj * rho.xi_grid.x(jx) / hbar;
                s += std::complex<double>(std::cos(phase), std::sin(phase)) * rho.at(i, jx);
            }
            w.at(i, jp) = pre * s.real();
            worst_imag = std::max(worst_imag, std::abs(pre * s.imag()));
        }
    }
    if (imag_residue) *imag_residue = worst_imag;
    if (worst_imag > 1e-9)
        throw NumericalError("wigner_transform: imaginary residue exceeds 1e-9 (non-hermitian input?)");
    return w;
}

}  // namespace qpl
