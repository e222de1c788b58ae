#pragma once

#include <functional>
#include <string>
#include <vector>

#include "semiclassical/quasi_langevin.hpp"

namespace qpl {

struct RatioEstimate {
    double value = 0.0;
    double std_error = 0.0;
    double weight_sum = 0.0;     // signed, in units of the largest magnitude
    double weight_sum_se = 0.0;
    int n_batches = 0;
};

/// <O> = sum_i w_i O(x_i) / sum_i w_i over terminal positions, with
/// delete-one-batch jackknife standard errors.  A signed weight sum
/// indistinguishable from zero (|sum| < 3 SE or exactly zero) raises
/// SignCollapseError.
RatioEstimate ratio_estimate(const SignedEnsemble& ens,
                             const std::function<double(double)>& observable,
                             int n_batches = 64);

/// Per-bin signed histogram over [lo, hi): bin sums / total signed sum.
std::vector<double> signed_density_estimate(const SignedEnsemble& ens, double lo, double hi,
                                            int bins);

struct SignDiagnostics {
    double mean_sign = 0.0;               // sum s_i |w_i| / sum |w_i|
    double mean_sign_se = 0.0;            // weighted standard error of mean_sign
    double effective_sample_size = 0.0;   // (sum |w_i|)^2 / sum w_i^2
    double negative_slice_fraction = 0.0; // negative-sign draws / all draws
    std::vector<double> per_slice_negative_fraction;
    std::vector<double> log_magnitude_hist_edges;
    std::vector<std::size_t> log_magnitude_hist;
    double degenerate_fraction = 0.0;
    std::size_t n = 0;
};

SignDiagnostics sign_diagnostics(const SignedEnsemble& ens);

}  // namespace qpl
