#pragma once

#include <complex>
#include <functional>
#include <vector>

// Test-side oracles, independent of the library implementations they check.

namespace oracle {

/// Airy Ai via two independent routes:
///  x < 0: RK4 march of y'' = x y from x = 0 (Gamma-function initial data);
///         the decaying direction, so error stays polynomial.
///  x >= 0: Ai(x) = (1/pi) sqrt(x/3) K_{1/3}((2/3) x^{3/2}) with K from
///          direct quadrature of its exponential integral representation.
double airy_ai(double x);
double airy_ai_prime(double x);

/// First zero of Ai from bisection of the ODE-march oracle.
double airy_first_zero();

/// Oscillatory slice integral  I(f, eps) = int dy exp{i eps (y f + y^3/3)}
/// evaluated on the rotated contour y = e^{i pi/6} t (exponential convergence
/// factor e^{-eps t^3/3}).
std::complex<double> airy_slice_integral(double f, double eps);

/// Composite Simpson quadrature of fn over [a, b] with n panels (n even).
double simpson(const std::function<double(double)>& fn, double a, double b, int n);

/// Central finite differences of fn at x (5-point stencils).
double fd_derivative1(const std::function<double(double)>& fn, double x, double h);
double fd_derivative2(const std::function<double(double)>& fn, double x, double h);
double fd_derivative3(const std::function<double(double)>& fn, double x, double h);

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
double ks_statistic(std::vector<double> a, std::vector<double> b);
double ks_p_value(double d, std::size_t n, std::size_t m);

/// Chi-square tail probability P(X > chi2) with k degrees of freedom.
double chi2_p_value(double chi2, int k);

}  // namespace oracle
