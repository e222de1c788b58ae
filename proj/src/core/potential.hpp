#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/grids.hpp"

namespace qpl {

enum class PotentialKind { harmonic, quartic, cubic_perturbed_harmonic, polynomial };

std::string to_string(PotentialKind k);

/// One-dimensional polynomial potential of degree <= 4 with exact derivatives
/// up to third order, plus the particle mass.  Immutable after construction.
class Potential1D {
public:
    /// V = 1/2 m omega^2 x^2
    static Potential1D harmonic(double mass, double omega);
    /// V = a x^4 (default a = 1/4)
    static Potential1D quartic(double mass, double a = 0.25);
    /// V = 1/2 m omega^2 x^2 + lambda x^3
    static Potential1D cubic_perturbed_harmonic(double mass, double omega, double lambda);
    /// V = 1/2 m omega^2 x^2 + lambda/4 x^4
    static Potential1D quartic_perturbed_harmonic(double mass, double omega, double lambda);
    /// V = sum_i coeffs[i] x^i, degree <= 4
    static Potential1D polynomial(double mass, std::vector<double> coeffs);

    /// Exact value of the order-th derivative of V at x, order in {0,1,2,3}.
    double eval(double x, int order = 0) const;

    double mass() const { return mass_; }
    PotentialKind kind() const { return kind_; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    /// max |V^(order)| over a grid; used by step-size stability checks.
    double max_abs_on_grid(const SpatialGrid& grid, int order) const;

private:
    Potential1D(PotentialKind kind, double mass, std::vector<double> coeffs);

    PotentialKind kind_;
    double mass_;
    std::vector<double> coeffs_;               // c0..c4
    std::array<std::array<double, 5>, 4> d_;   // derivative coefficient tables
};

inline double potential_eval(const Potential1D& pot, double x, int order) {
    return pot.eval(x, order);
}

}  // namespace qpl
