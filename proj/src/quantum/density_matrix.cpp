#include "quantum/density_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "quantum/fft.hpp"

namespace qpl {
namespace {

// Cubic Lagrange interpolation of a complex grid function; exact on nodes,
// zero outside the grid (states are required to have decayed there).  The
// boundary test tolerates rounding so mirrored arguments are cut identically.
std::complex<double> interp_cubic(const SpatialGrid& g,
                                  const std::vector<std::complex<double>>& f, double x) {
    const int n = g.size();
    const double s_raw = (x - g.x_min()) / g.dx();
    if (s_raw < -1e-9 || s_raw > static_cast<double>(n - 1) + 1e-9) return {0.0, 0.0};
    const double s = std::clamp(s_raw, 0.0, static_cast<double>(n - 1));
    int i1 = static_cast<int>(std::floor(s));
    if (i1 >= n - 1) i1 = n - 2;
    const double frac = s - static_cast<double>(i1);
    if (frac == 0.0) return f[static_cast<std::size_t>(i1)];
    int i0 = i1 - 1;
    if (i0 < 0) i0 = 0;
    if (i0 > n - 4) i0 = n - 4;
    const double t = s - static_cast<double>(i0);
    // Lagrange basis on nodes {0,1,2,3}
    const double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
    const double l1 = t * (t - 2) * (t - 3) / 2.0;
    const double l2 = -t * (t - 1) * (t - 3) / 2.0;
    const double l3 = t * (t - 1) * (t - 2) / 6.0;
    return l0 * f[static_cast<std::size_t>(i0)] + l1 * f[static_cast<std::size_t>(i0 + 1)] +
           l2 * f[static_cast<std::size_t>(i0 + 2)] + l3 * f[static_cast<std::size_t>(i0 + 3)];
}

}  // namespace

int DensityMatrixXY::xi_zero_index() const {
    const int idx = xi_grid.nearest_index(0.0);
    if (std::abs(xi_grid.x(idx)) > 1e-12 * (1.0 + xi_grid.dx()))
        throw UsageError("DensityMatrixXY: xi grid must contain xi = 0");
    return idx;
}

std::vector<double> DensityMatrixXY::diagonal() const {
    const int iz = xi_zero_index();
    std::vector<double> d(static_cast<std::size_t>(x_grid.size()));
    for (int i = 0; i < x_grid.size(); ++i) d[static_cast<std::size_t>(i)] = at(i, iz).real();
    return d;
}

double DensityMatrixXY::trace() const {
    const auto d = diagonal();
    double s = 0.0;
    for (double v : d) s += v;
    return s * x_grid.dx();
}

double DensityMatrixXY::hermiticity_defect() const {
    const int nxi = xi_grid.size();
    double worst = 0.0;
    for (int i = 0; i < x_grid.size(); ++i)
        for (int j = 0; j < nxi; ++j) {
            const int jm = nxi - 1 - j;  // xi -> -xi on the symmetric grid
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(i, jm))));
        }
    return worst;
}

double DensityMatrixXY::edge_magnitude() const {
    const int nx = x_grid.size(), nxi = xi_grid.size();
    double worst = 0.0;
    for (int j = 0; j < nxi; ++j) {
        worst = std::max(worst, std::abs(at(0, j)));
        worst = std::max(worst, std::abs(at(nx - 1, j)));
    }
    for (int i = 0; i < nx; ++i) {
        worst = std::max(worst, std::abs(at(i, 0)));
        worst = std::max(worst, std::abs(at(i, nxi - 1)));
    }
    return worst;
}

double DensityMatrixXY::edge_mass() const {
    const int iz = xi_zero_index();
    const int nx = x_grid.size();
    double mass = 0.0;
    for (int i : {0, 1, nx - 2, nx - 1}) mass += std::abs(at(i, iz).real());
    return mass * x_grid.dx();
}

SpatialGrid aligned_xi_grid(const SpatialGrid& x_grid) {
    const int half = (x_grid.size() - 1) / 2;
    const double span = 2.0 * x_grid.dx() * static_cast<double>(half);
    return SpatialGrid(-span, span, 2 * half + 1);
}

DensityMatrixXY to_relative_frame(const WaveFunction& psi, const SpatialGrid& xi_grid) {
    const double x_span = psi.grid.x_max() - psi.grid.x_min();
    const double xi_span = xi_grid.x_max() - xi_grid.x_min();
    if (xi_span > 2.0 * x_span * (1.0 + 1e-12))
        throw UsageError("to_relative_frame: xi grid span must be <= 2x the x grid span");

    DensityMatrixXY rho(psi.grid, xi_grid, psi.hbar);
    for (int i = 0; i < psi.grid.size(); ++i) {
        const double x = psi.grid.x(i);
        for (int j = 0; j < xi_grid.size(); ++j) {
            const double xi = xi_grid.x(j);
            const std::complex<double> a = interp_cubic(psi.grid, psi.amp, x - 0.5 * xi);
            const std::complex<double> b = interp_cubic(psi.grid, psi.amp, x + 0.5 * xi);
            rho.at(i, j) = a * std::conj(b);
        }
    }
    return rho;
}

std::complex<double> slice_kernel_element(const Potential1D& pot, double eps, double hbar,
                                          double x0, double xi0, double x1, double xi1) {
    const double m = pot.mass();
    const double g0 = pot.eval(x0 + 0.5 * xi0) - pot.eval(x0 - 0.5 * xi0);
    const double g1 = pot.eval(x1 + 0.5 * xi1) - pot.eval(x1 - 0.5 * xi1);
    const double phase =
        (-m * (x1 - x0) * (xi1 - xi0) / eps + 0.5 * eps * (g0 + g1)) / hbar;
    const double pre = m / (2.0 * M_PI * hbar * eps);
    return pre * std::complex<double>(std::cos(phase), std::sin(phase));
}

namespace {

// 4-point cubic Lagrange weights at fractional offset t from node i0 of the
// stencil {i0, i0+1, i0+2, i0+3}
void cubic_weights(double t, double w[4]) {
    w[0] = -(t - 1) * (t - 2) * (t - 3) / 6.0;
    w[1] = t * (t - 2) * (t - 3) / 2.0;
    w[2] = -t * (t - 1) * (t - 3) / 2.0;
    w[3] = t * (t - 1) * (t - 2) / 6.0;
}

void fft2d(std::vector<std::complex<double>>& a, std::size_t n, int sign) {
    std::vector<std::complex<double>> line(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) line[c] = a[r * n + c];
        fft(line, sign);
        for (std::size_t c = 0; c < n; ++c) a[r * n + c] = line[c];
    }
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) line[r] = a[r * n + c];
        fft(line, sign);
        for (std::size_t r = 0; r < n; ++r) a[r * n + c] = line[r];
    }
}

// The aligned (x, xi) lattice holds the even-index-sum half of the (q, q')
// lattice (a checkerboard).  For states whose 2D spectrum lies inside the
// quincunx Nyquist diamond |k_q| + |k_q'| < pi/dx -- every resolvable state
// does -- zeroing the odd sites halves each Fourier coefficient and adds an
// alias copy strictly outside the diamond, so masking and doubling restores
// the full lattice exactly.
void fill_odd_sites_fourier(std::vector<std::complex<double>>& rho_q, std::size_t n) {
    fft2d(rho_q, n, -1);
    const std::size_t half = n / 2;
    for (std::size_t ka = 0; ka < n; ++ka) {
        const std::size_t fa = std::min(ka, n - ka);  // folded frequency
        for (std::size_t kb = 0; kb < n; ++kb) {
            const std::size_t fb = std::min(kb, n - kb);
            auto& z = rho_q[ka * n + kb];
            if (fa + fb < half)
                z *= 2.0;
            else if (fa + fb > half)
                z = 0.0;
            // boundary ties overlap their own alias; left untouched (they are
            // negligible for resolved states)
        }
    }
    fft2d(rho_q, n, +1);
}

}  // namespace

namespace {

void run_transfer_slices(std::vector<std::complex<double>>& rho_q, TransferResult& res,
                         const DensityMatrixXY& geom, const Potential1D& pot,
                         const TimeGrid& time, const TransferOptions& opt) {
    const int nx = geom.x_grid.size();
    const std::size_t n = static_cast<std::size_t>(nx);
    const double dx = geom.x_grid.dx();
    const double eps = time.eps();
    const double hbar = geom.hbar;
    const double m = pot.mass();

    // one-slice wave-function kernel K(q1|q0) with trapezoid potential weights
    std::vector<std::complex<double>> kernel(n * n);
    const std::complex<double> pref =
        std::sqrt(m / (2.0 * M_PI * hbar * eps * std::complex<double>(0.0, 1.0))) * dx;
    for (int i1 = 0; i1 < nx; ++i1) {
        for (int i0 = 0; i0 < nx; ++i0) {
            const double dq = geom.x_grid.x(i1) - geom.x_grid.x(i0);
            const double phase = (m * dq * dq / (2.0 * eps) -
                                  0.5 * eps * (pot.eval(geom.x_grid.x(i0)) +
                                               pot.eval(geom.x_grid.x(i1)))) /
                                 hbar;
            double damp = 1.0;
            if (opt.cell_average) {
                const double z = m * dq * dx / (2.0 * hbar * eps);
                damp = (z == 0.0) ? 1.0 : std::sin(z) / z;
            }
            kernel[static_cast<std::size_t>(i1) * n + static_cast<std::size_t>(i0)] =
                pref * damp * std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }

    std::vector<std::complex<double>> tmp(n * n), next(n * n);
    for (int slice = 0; slice < time.n_slices(); ++slice) {
        // rho' = K rho K^dagger
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                std::complex<double> s{0.0, 0.0};
                const std::complex<double>* krow = &kernel[i * n];
                const std::complex<double>* rcol = &rho_q[j];
                for (std::size_t l = 0; l < n; ++l) s += krow[l] * rcol[l * n];
                tmp[i * n + j] = s;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                std::complex<double> s{0.0, 0.0};
                const std::complex<double>* trow = &tmp[i * n];
                const std::complex<double>* krow = &kernel[j * n];
                for (std::size_t l = 0; l < n; ++l) s += trow[l] * std::conj(krow[l]);
                next[i * n + j] = s;
            }
        }
        rho_q.swap(next);

        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += rho_q[i * n + i].real();
        tr *= dx;
        if (!std::isfinite(tr) || std::abs(tr) < 1e-12)
            throw NumericalError("propagate_density_matrix_pathintegral: kernel normalization diverged");
        const double drift = std::abs(tr - 1.0);
        res.max_trace_drift = std::max(res.max_trace_drift, drift);
        res.trace_by_slice.push_back(tr);
        if (drift > opt.trace_tolerance)
            throw NumericalError("propagate_density_matrix_pathintegral: trace drift " +
                                 std::to_string(drift) + " exceeds tolerance");
        const double inv = 1.0 / tr;
        for (auto& z : rho_q) z *= inv;

        double edge = 0.0;
        for (int i : {0, 1, nx - 2, nx - 1})
            edge += std::abs(rho_q[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(i)].real());
        edge *= dx;
        if (edge > opt.edge_abort)
            throw NumericalError("propagate_density_matrix_pathintegral: absorbed edge mass " +
                                 std::to_string(edge) + " exceeded the limit");
    }

    // back to the (x, xi) frame: every aligned node is an even-sum pair
    const int nxi = geom.xi_grid.size();
    const int m_half = (nxi - 1) / 2;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < nxi; ++j) {
            const int d = j - m_half;
            const int a = i - d, b = i + d;
            res.rho.at(i, j) = (a >= 0 && a < nx && b >= 0 && b < nx)
                                   ? rho_q[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)]
                                   : std::complex<double>{0.0, 0.0};
        }
    }
    res.rho_q_final = rho_q;
}

}  // namespace

TransferResult propagate_density_matrix_pathintegral(const DensityMatrixXY& rho0,
                                                     const Potential1D& pot,
                                                     const TimeGrid& time,
                                                     const TransferOptions& opt) {
    const int nx = rho0.x_grid.size();
    const int nxi = rho0.xi_grid.size();
    if (nx > 128 || nxi > 257)
        throw UsageError("propagate_density_matrix_pathintegral: grid too large");
    const double dx = rho0.x_grid.dx();
    if (std::abs(rho0.xi_grid.dx() - 2.0 * dx) > 1e-9 * dx || nxi % 2 == 0)
        throw UsageError(
            "propagate_density_matrix_pathintegral: xi grid must be odd-sized with spacing 2 dx");
    const int m_half = (nxi - 1) / 2;
    if (std::abs(rho0.xi_grid.x(m_half)) > 1e-9 * dx)
        throw UsageError("propagate_density_matrix_pathintegral: xi grid must be centered on 0");

    const std::size_t n = static_cast<std::size_t>(nx);

    // rho(q_a, q_b): even index sums map exactly onto the (x, xi) lattice;
    // odd sums sit between nodes and are reconstructed band-limited (power-of-
    // two grids) or by tensor-cubic interpolation otherwise
    std::vector<std::complex<double>> rho_q(n * n, {0.0, 0.0});
    for (int a = 0; a < nx; ++a) {
        for (int b = 0; b < nx; ++b) {
            const int sum = a + b, diff = b - a;
            if (sum % 2 != 0) continue;
            const int i = sum / 2;
            const int j = m_half + diff / 2;
            rho_q[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] =
                (j >= 0 && j < nxi) ? rho0.at(i, j) : std::complex<double>{0.0, 0.0};
        }
    }
    if (is_power_of_two(nx)) {
        fill_odd_sites_fourier(rho_q, n);
    } else {
        for (int a = 0; a < nx; ++a) {
            for (int b = 0; b < nx; ++b) {
                const int sum = a + b, diff = b - a;
                if (sum % 2 == 0) continue;
                int ix0 = sum / 2 - 1;
                ix0 = std::max(0, std::min(ix0, nx - 4));
                const double tx = 0.5 * sum - ix0;
                int jx0 = m_half + (diff - 1) / 2 - 1;
                jx0 = std::max(0, std::min(jx0, nxi - 4));
                const double tj = (0.5 * diff + m_half) - jx0;
                double wx[4], wj[4];
                cubic_weights(tx, wx);
                cubic_weights(tj, wj);
                std::complex<double> s{0.0, 0.0};
                for (int u = 0; u < 4; ++u)
                    for (int v = 0; v < 4; ++v) s += wx[u] * wj[v] * rho0.at(ix0 + u, jx0 + v);
                rho_q[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = s;
            }
        }
    }

    TransferResult res{rho0, 0.0, {}, {}};
    run_transfer_slices(rho_q, res, rho0, pot, time, opt);
    return res;
}

TransferResult resume_density_matrix_pathintegral(const TransferResult& prev,
                                                  const Potential1D& pot, const TimeGrid& time,
                                                  const TransferOptions& opt) {
    const std::size_t n = static_cast<std::size_t>(prev.rho.x_grid.size());
    if (prev.rho_q_final.size() != n * n)
        throw UsageError("resume_density_matrix_pathintegral: no continuation state");
    std::vector<std::complex<double>> rho_q = prev.rho_q_final;
    TransferResult res{prev.rho, 0.0, {}, {}};
    run_transfer_slices(rho_q, res, prev.rho, pot, time, opt);
    return res;
}

}  // namespace qpl
