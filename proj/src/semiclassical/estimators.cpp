#include "semiclassical/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace qpl {
namespace {

// weights rescaled by the largest magnitude so exp() cannot overflow
std::vector<double> scaled_weights(const SignedEnsemble& ens) {
    double lm_max = -1e300;
    for (double lm : ens.log_magnitude) lm_max = std::max(lm_max, lm);
    std::vector<double> w(ens.n_traj);
    for (std::size_t i = 0; i < ens.n_traj; ++i)
        w[i] = static_cast<double>(ens.sign[i]) * std::exp(ens.log_magnitude[i] - lm_max);
    return w;
}

}  // namespace

RatioEstimate ratio_estimate(const SignedEnsemble& ens,
                             const std::function<double(double)>& observable, int n_batches) {
    const std::size_t n = ens.n_traj;
    if (n == 0) throw UsageError("ratio_estimate: empty ensemble");
    const std::vector<double> w = scaled_weights(ens);

    const int nb = std::max(2, std::min<int>(n_batches, static_cast<int>(n)));
    std::vector<double> num_b(static_cast<std::size_t>(nb), 0.0);
    std::vector<double> den_b(static_cast<std::size_t>(nb), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t b = i * static_cast<std::size_t>(nb) / n;
        const double oi = observable(ens.terminal[i]);
        num_b[b] += w[i] * oi;
        den_b[b] += w[i];
    }
    double num = 0.0, den = 0.0;
    for (int b = 0; b < nb; ++b) {
        num += num_b[static_cast<std::size_t>(b)];
        den += den_b[static_cast<std::size_t>(b)];
    }

    // standard error of the signed weight sum from batch scatter
    double den_var = 0.0;
    const double den_mean = den / static_cast<double>(nb);
    for (int b = 0; b < nb; ++b) {
        const double d = den_b[static_cast<std::size_t>(b)] - den_mean;
        den_var += d * d;
    }
    const double den_se =
        std::sqrt(den_var * static_cast<double>(nb) / static_cast<double>(nb - 1));

    RatioEstimate out;
    out.n_batches = nb;
    out.weight_sum = den;
    out.weight_sum_se = den_se;
    // exact cancellation always fails; the statistical-zero test needs enough
    // batches to make the scatter estimate meaningful
    if (den == 0.0 || (nb >= 16 && std::abs(den) < 3.0 * den_se))
        throw SignCollapseError(
            "ratio_estimate: signed weight sum " + std::to_string(den) +
                " is indistinguishable from zero (SE " + std::to_string(den_se) +
                "); the ratio estimator is undefined in this regime",
            den / (std::abs(den) + den_se + 1e-300), 0.0, 0.0);

    out.value = num / den;

    // delete-one-batch jackknife
    std::vector<double> loo(static_cast<std::size_t>(nb));
    double loo_mean = 0.0;
    for (int b = 0; b < nb; ++b) {
        const double nb_num = num - num_b[static_cast<std::size_t>(b)];
        const double nb_den = den - den_b[static_cast<std::size_t>(b)];
        loo[static_cast<std::size_t>(b)] = nb_num / nb_den;
        loo_mean += loo[static_cast<std::size_t>(b)];
    }
    loo_mean /= static_cast<double>(nb);
    double ss = 0.0;
    for (int b = 0; b < nb; ++b) {
        const double d = loo[static_cast<std::size_t>(b)] - loo_mean;
        ss += d * d;
    }
    out.std_error = std::sqrt(ss * static_cast<double>(nb - 1) / static_cast<double>(nb));
    return out;
}

std::vector<double> signed_density_estimate(const SignedEnsemble& ens, double lo, double hi,
                                            int bins) {
    if (!(hi > lo) || bins < 1) throw UsageError("signed_density_estimate: bad binning");
    const std::vector<double> w = scaled_weights(ens);
    std::vector<double> sums(static_cast<std::size_t>(bins), 0.0);
    double total = 0.0;
    const double binw = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i < ens.n_traj; ++i) {
        total += w[i];
        const double x = ens.terminal[i];
        if (x < lo || x >= hi) continue;
        const int b = static_cast<int>((x - lo) / binw);
        sums[static_cast<std::size_t>(std::min(b, bins - 1))] += w[i];
    }
    if (total == 0.0)
        throw SignCollapseError("signed_density_estimate: signed weight sum is exactly zero");
    for (double& s : sums) s /= total * binw;  // normalized density
    return sums;
}

SignDiagnostics sign_diagnostics(const SignedEnsemble& ens) {
    SignDiagnostics d;
    d.n = ens.n_traj;
    if (ens.n_traj == 0) return d;

    const std::vector<double> w = scaled_weights(ens);
    double abs_sum = 0.0, signed_sum = 0.0, sq_sum = 0.0;
    for (double wi : w) {
        abs_sum += std::abs(wi);
        signed_sum += wi;
        sq_sum += wi * wi;
    }
    d.mean_sign = signed_sum / abs_sum;
    d.effective_sample_size = abs_sum * abs_sum / sq_sum;
    // |w|-weighted variance of the signs around the weighted mean
    double var_w = 0.0;
    for (double wi : w) {
        const double s = (wi < 0.0) ? -1.0 : 1.0;
        var_w += std::abs(wi) * (s - d.mean_sign) * (s - d.mean_sign);
    }
    d.mean_sign_se = std::sqrt(var_w / abs_sum / d.effective_sample_size);

    std::size_t draws = 0, neg = 0;
    d.per_slice_negative_fraction.resize(ens.slice_draws.size(), 0.0);
    for (std::size_t k = 0; k < ens.slice_draws.size(); ++k) {
        draws += ens.slice_draws[k];
        neg += ens.slice_negative[k];
        d.per_slice_negative_fraction[k] =
            ens.slice_draws[k] == 0
                ? 0.0
                : static_cast<double>(ens.slice_negative[k]) / static_cast<double>(ens.slice_draws[k]);
    }
    d.negative_slice_fraction = draws == 0 ? 0.0 : static_cast<double>(neg) / static_cast<double>(draws);
    d.degenerate_fraction = ens.degenerate_fraction();

    // histogram of log weight magnitudes
    double lo = ens.log_magnitude[0], hi = ens.log_magnitude[0];
    for (double lm : ens.log_magnitude) {
        lo = std::min(lo, lm);
        hi = std::max(hi, lm);
    }
    const int bins = 30;
    if (hi <= lo) hi = lo + 1.0;
    const double binw = (hi - lo) / bins;
    d.log_magnitude_hist.assign(bins, 0);
    d.log_magnitude_hist_edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) d.log_magnitude_hist_edges[static_cast<std::size_t>(b)] = lo + binw * b;
    for (double lm : ens.log_magnitude) {
        int b = static_cast<int>((lm - lo) / binw);
        b = std::clamp(b, 0, bins - 1);
        ++d.log_magnitude_hist[static_cast<std::size_t>(b)];
    }
    return d;
}

}  // namespace qpl
