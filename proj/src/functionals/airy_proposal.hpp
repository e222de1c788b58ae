#pragma once

#include <vector>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace qpl {

// Tabulated inverse-CDF sampler for the density |Ai(u)| / integral |Ai| on the
// truncated support [-L, u_plus], where u_plus is the point past which Ai has
// decayed below 1e-12.  |Ai| is not integrable on the negative axis, so the
// truncation L is a genuine model parameter, not a numerical convenience.
// Each draw also reports sgn(Ai(u)), the sign the Airy measure assigns there.
class AiryProposal {
public:
    struct Draw {
        double u;
        int sign;
    };

    explicit AiryProposal(double truncation, int table_points = 200001);

    Draw sample(RngStream& rng) const;

    double support_min() const { return support_min_; }
    double support_max() const { return support_max_; }
    double truncation() const { return truncation_; }

    /// integral of Ai over the support divided by integral of |Ai|;
    /// the expected sign of a single draw.
    double mean_sign() const { return integral_ai_ / integral_abs_ai_; }
    double integral_ai() const { return integral_ai_; }
    double integral_abs_ai() const { return integral_abs_ai_; }

    /// Normalized proposal density at u (0 outside the support).
    double density(double u) const;

    int sign_at(double u) const;
    const std::vector<double>& zeros() const { return zeros_; }

private:
    double truncation_;
    double support_min_, support_max_;
    double du_ = 0.0;
    std::vector<double> grid_;  // abscissae
    std::vector<double> pdf_;   // |Ai| on grid_
    std::vector<double> cdf_;   // normalized cumulative trapezoid of pdf_
    std::vector<double> zeros_; // roots of Ai inside the support, ascending
    double integral_ai_ = 0.0;
    double integral_abs_ai_ = 0.0;
};

}  // namespace qpl
