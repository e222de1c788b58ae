#include "functionals/airy_proposal.hpp"

#include <algorithm>
#include <cmath>

#include "functionals/airy.hpp"

namespace qpl {
namespace {

// Smallest u >= 0 with Ai(u) < 1e-12, bracketed on a coarse scan.
double positive_support_edge() {
    static const double edge = [] {
        double lo = 0.0, hi = 0.0;
        for (double u = 1.0; u <= 20.0; u += 0.5) {
            if (airy_ai(u) < 1e-12) {
                hi = u;
                lo = u - 0.5;
                break;
            }
        }
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (airy_ai(mid) < 1e-12)
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return edge;
}

}  // namespace

AiryProposal::AiryProposal(double truncation, int table_points) : truncation_(truncation) {
    if (!(truncation > 0.0))
        throw UsageError("AiryProposal: truncation L must be positive");
    if (table_points < 1000)
        throw UsageError("AiryProposal: table needs at least 1000 points");

    support_min_ = -truncation;
    support_max_ = positive_support_edge();

    const std::size_t n = static_cast<std::size_t>(table_points);
    grid_.resize(n);
    pdf_.resize(n);
    du_ = (support_max_ - support_min_) / static_cast<double>(n - 1);

    std::vector<double> ai(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid_[i] = support_min_ + du_ * static_cast<double>(i);
        ai[i] = airy_ai(grid_[i]);
        pdf_[i] = std::abs(ai[i]);
    }

    // cumulative trapezoid of |Ai|, plus signed integral for the mean sign
    cdf_.resize(n);
    cdf_[0] = 0.0;
    double signed_sum = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        cdf_[i] = cdf_[i - 1] + 0.5 * du_ * (pdf_[i] + pdf_[i - 1]);
        signed_sum += 0.5 * du_ * (ai[i] + ai[i - 1]);
    }
    integral_abs_ai_ = cdf_.back();
    integral_ai_ = signed_sum;
    for (std::size_t i = 0; i < n; ++i) cdf_[i] /= integral_abs_ai_;
    cdf_.back() = 1.0;

    // locate the sign changes of Ai inside the support
    for (std::size_t i = 1; i < n; ++i) {
        if ((ai[i - 1] < 0.0) != (ai[i] < 0.0)) {
            double lo = grid_[i - 1], hi = grid_[i];
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((airy_ai(mid) < 0.0) == (ai[i - 1] < 0.0))
                    lo = mid;
                else
                    hi = mid;
            }
            zeros_.push_back(0.5 * (lo + hi));
        }
    }
}

AiryProposal::Draw AiryProposal::sample(RngStream& rng) const {
    const double v = rng.uniform01();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), v);
    std::size_t hi = static_cast<std::size_t>(it - cdf_.begin());
    if (hi == 0) hi = 1;
    if (hi >= cdf_.size()) hi = cdf_.size() - 1;
    const std::size_t lo = hi - 1;
    const double c0 = cdf_[lo], c1 = cdf_[hi];
    const double frac = (c1 > c0) ? (v - c0) / (c1 - c0) : 0.5;
    const double u = grid_[lo] + frac * du_;
    return {u, sign_at(u)};
}

double AiryProposal::density(double u) const {
    if (u < support_min_ || u > support_max_) return 0.0;
    return std::abs(airy_ai(u)) / integral_abs_ai_;
}

int AiryProposal::sign_at(double u) const {
    // Ai > 0 to the right of its largest zero; each zero crossing flips it.
    const auto it = std::upper_bound(zeros_.begin(), zeros_.end(), u);
    const std::size_t zeros_above = static_cast<std::size_t>(zeros_.end() - it);
    return (zeros_above % 2 == 0) ? +1 : -1;
}

}  // namespace qpl
