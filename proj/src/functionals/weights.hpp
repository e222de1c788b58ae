#pragma once

#include <cmath>
#include <span>

#include "core/errors.hpp"
#include "functionals/airy.hpp"

namespace qpl {

/// One multiplicative slice factor of a path weight, kept as magnitude and
/// sign so long products can accumulate in log space without underflow.
struct SliceWeight {
    double magnitude = 1.0;  // >= 0, finite
    int sign = +1;           // +1 or -1
};

/// Slice factor of the Airy functional after rescaling the slice integration
/// variable by eps^(1/3): proportional to Ai(eps^(2/3) f_k).  Constant
/// prefactors are dropped; ratio estimators normalize them away.
inline SliceWeight airy_slice_weight(double f_k, double eps) {
    if (!(eps > 0.0)) throw UsageError("airy_slice_weight: eps must be positive");
    const double a = airy_ai(std::pow(eps, 2.0 / 3.0) * f_k);
    return {std::abs(a), a < 0.0 ? -1 : +1};
}

/// Discretized Gaussian functional G_D[R] = exp{-(eps/2D) sum_k R_k^2}.
inline double gaussian_path_log_weight(std::span<const double> r, double diffusion, double eps) {
    if (!(diffusion > 0.0)) throw UsageError("gaussian_path_weight: D must be positive");
    if (!(eps > 0.0)) throw UsageError("gaussian_path_weight: eps must be positive");
    double sum_sq = 0.0;
    for (double v : r) sum_sq += v * v;
    return -0.5 * eps / diffusion * sum_sq;
}

inline double gaussian_path_weight(std::span<const double> r, double diffusion, double eps) {
    return std::exp(gaussian_path_log_weight(r, diffusion, eps));
}

/// Accumulates a product of SliceWeights as (sign, log magnitude).
class LogWeightAccumulator {
public:
    void multiply(const SliceWeight& w) {
        if (w.magnitude <= 0.0) {
            zero_ = true;
            return;
        }
        log_magnitude_ += std::log(w.magnitude);
        sign_ *= w.sign;
    }

    void multiply_magnitude(double m) {
        if (m <= 0.0) {
            zero_ = true;
            return;
        }
        log_magnitude_ += std::log(m);
    }

    bool zero() const { return zero_; }
    double log_magnitude() const { return log_magnitude_; }
    int sign() const { return sign_; }

private:
    double log_magnitude_ = 0.0;
    int sign_ = +1;
    bool zero_ = false;
};

}  // namespace qpl
