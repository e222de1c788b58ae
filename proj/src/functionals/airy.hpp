#pragma once

namespace qpl {

/// Standard-normalization Airy function Ai(x).
/// Absolute error below 1e-10 on [-20, 10].
double airy_ai(double x);

/// Derivative Ai'(x), same accuracy class.
double airy_ai_prime(double x);

/// First (largest) real zero of Ai, located by bisection of airy_ai.
double airy_first_zero();

}  // namespace qpl
