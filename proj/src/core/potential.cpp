#include "core/potential.hpp"

#include <algorithm>
#include <cmath>

namespace qpl {

std::string to_string(PotentialKind k) {
    switch (k) {
        case PotentialKind::harmonic: return "harmonic";
        case PotentialKind::quartic: return "quartic";
        case PotentialKind::cubic_perturbed_harmonic: return "cubic-perturbed-harmonic";
        case PotentialKind::polynomial: return "polynomial";
    }
    return "unknown";
}

Potential1D::Potential1D(PotentialKind kind, double mass, std::vector<double> coeffs)
    : kind_(kind), mass_(mass), coeffs_(std::move(coeffs)) {
    if (!(mass_ > 0.0) || !std::isfinite(mass_))
        throw UsageError("Potential1D: mass must be positive and finite");
    if (coeffs_.size() > 5)
        throw UsageError("Potential1D: polynomial degree must be <= 4");
    coeffs_.resize(5, 0.0);
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw UsageError("Potential1D: non-finite coefficient");

    // d_[k][i]: coefficient of x^i in the k-th derivative
    for (int i = 0; i < 5; ++i) d_[0][static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)];
    for (int k = 1; k < 4; ++k) {
        for (int i = 0; i < 5; ++i) {
            d_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
                (i + 1 < 5) ? d_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i + 1)] * static_cast<double>(i + 1)
                            : 0.0;
        }
    }
}

Potential1D Potential1D::harmonic(double mass, double omega) {
    return Potential1D(PotentialKind::harmonic, mass, {0.0, 0.0, 0.5 * mass * omega * omega});
}

Potential1D Potential1D::quartic(double mass, double a) {
    return Potential1D(PotentialKind::quartic, mass, {0.0, 0.0, 0.0, 0.0, a});
}

Potential1D Potential1D::cubic_perturbed_harmonic(double mass, double omega, double lambda) {
    return Potential1D(PotentialKind::cubic_perturbed_harmonic, mass,
                       {0.0, 0.0, 0.5 * mass * omega * omega, lambda});
}

Potential1D Potential1D::quartic_perturbed_harmonic(double mass, double omega, double lambda) {
    return Potential1D(PotentialKind::polynomial, mass,
                       {0.0, 0.0, 0.5 * mass * omega * omega, 0.0, 0.25 * lambda});
}

Potential1D Potential1D::polynomial(double mass, std::vector<double> coeffs) {
    return Potential1D(PotentialKind::polynomial, mass, std::move(coeffs));
}

double Potential1D::eval(double x, int order) const {
    if (order < 0 || order > 3)
        throw UsageError("potential_eval: derivative order must be in {0,1,2,3}");
    const auto& c = d_[static_cast<std::size_t>(order)];
    // Horner
    return ((c[4] * x + c[3]) * x + c[2]) * x * x + c[1] * x + c[0];
}

double Potential1D::max_abs_on_grid(const SpatialGrid& grid, int order) const {
    double m = 0.0;
    for (int i = 0; i < grid.size(); ++i)
        m = std::max(m, std::abs(eval(grid.x(i), order)));
    return m;
}

}  // namespace qpl
