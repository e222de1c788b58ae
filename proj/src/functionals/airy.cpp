#include "functionals/airy.hpp"

#include <cmath>
#include <cstdlib>

namespace qpl {
namespace {

// Ai(0) = 3^(-2/3)/Gamma(2/3), Ai'(0) = -3^(-1/3)/Gamma(1/3)
constexpr long double kAi0 = 0.3550280538878172392600631860041831763980L;
constexpr long double kAip0 = -0.2588194037928067984051835601892039634793L;

// Maclaurin series Ai = Ai(0) f(z) + Ai'(0) g(z), evaluated in long double.
// Catastrophic cancellation grows like e^{(2/3)|z|^{3/2}}, which extended
// precision keeps below ~1e-13 for |z| <= 7.5.
constexpr double kSeriesLo = -7.5;
constexpr double kSeriesHi = 6.0;

struct SeriesResult {
    long double value;
    long double deriv;
};

SeriesResult maclaurin(long double z) {
    if (z == 0.0L) return {kAi0, kAip0};
    const long double z3 = z * z * z;
    long double fa = 1.0L;             // a_k z^{3k}
    long double gb = z;                // b_k z^{3k+1}
    long double f = fa, g = gb;
    long double fp = 0.0L, gp = 1.0L;  // f' = sum a_k 3k z^{3k-1}, g' = sum b_k (3k+1) z^{3k}
    for (int k = 0; k < 200; ++k) {
        const long double kk = static_cast<long double>(k);
        fa *= z3 / ((3 * kk + 2) * (3 * kk + 3));
        gb *= z3 / ((3 * kk + 3) * (3 * kk + 4));
        f += fa;
        g += gb;
        fp += fa * (3 * kk + 3) / z;
        gp += gb * (3 * kk + 4) / z;
        if (std::abs(fa) < 1e-30L && std::abs(gb) < 1e-30L) break;
    }
    SeriesResult r;
    r.value = kAi0 * f + kAip0 * g;
    r.deriv = kAi0 * fp + kAip0 * gp;
    return r;
}

// u_k coefficients of the large-argument expansions (A&S 10.4.59-10.4.62).
constexpr int kMaxAsym = 24;

struct AsymCoeffs {
    long double u[kMaxAsym];
    long double v[kMaxAsym];
    AsymCoeffs() {
        u[0] = 1.0L;
        v[0] = 1.0L;
        for (int k = 1; k < kMaxAsym; ++k) {
            const long double kk = static_cast<long double>(k);
            u[k] = u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) /
                   (216.0L * kk * (2 * kk - 1));
            v[k] = u[k] * (6 * kk + 1) / (1 - 6 * kk);
        }
    }
};

const AsymCoeffs& coeffs() {
    static const AsymCoeffs c;
    return c;
}

// Alternating sum S = sum_k (-1)^k c_k zeta^{-k}, truncated at the smallest term.
long double alt_sum(const long double* c, long double inv_zeta) {
    long double sum = c[0];
    long double pw = 1.0L;
    long double prev = std::abs(c[0]);
    for (int k = 1; k < kMaxAsym; ++k) {
        pw *= inv_zeta;
        const long double term = c[k] * pw;
        if (std::abs(term) > prev) break;  // divergent tail reached
        sum += ((k & 1) ? -term : term);
        prev = std::abs(term);
        if (prev < 1e-22L) break;
    }
    return sum;
}

// Even/odd split for the oscillatory expansion:
//   P = sum (-1)^k c_{2k} zeta^{-2k},  Q = sum (-1)^k c_{2k+1} zeta^{-2k-1}
void even_odd_sums(const long double* c, long double inv_zeta, long double& P, long double& Q) {
    P = 0.0L;
    Q = 0.0L;
    long double pw = 1.0L;
    long double prev = 1e30L;
    for (int k = 0; k < kMaxAsym; ++k) {
        const long double term = c[k] * pw;
        if (std::abs(term) > prev) break;
        const int pair = k / 2;
        const long double signed_term = (pair & 1) ? -term : term;
        if ((k & 1) == 0)
            P += signed_term;
        else
            Q += signed_term;
        prev = std::abs(term);
        pw *= inv_zeta;
        if (prev < 1e-22L) break;
    }
}

struct AiryPair {
    double ai;
    double aip;
};

AiryPair eval_both(double x) {
    if (x >= kSeriesLo && x <= kSeriesHi) {
        const SeriesResult r = maclaurin(static_cast<long double>(x));
        return {static_cast<double>(r.value), static_cast<double>(r.deriv)};
    }
    const AsymCoeffs& c = coeffs();
    if (x > kSeriesHi) {
        const long double z = static_cast<long double>(x);
        const long double zeta = (2.0L / 3.0L) * z * std::sqrt(z);
        const long double inv_zeta = 1.0L / zeta;
        const long double pre = std::exp(-zeta) / (2.0L * std::sqrt(static_cast<long double>(M_PI)));
        const long double z14 = std::pow(z, 0.25L);
        const long double ai = pre / z14 * alt_sum(c.u, inv_zeta);
        const long double aip = -pre * z14 * alt_sum(c.v, inv_zeta);
        return {static_cast<double>(ai), static_cast<double>(aip)};
    }
    // x < kSeriesLo
    const long double z = static_cast<long double>(-x);
    const long double zeta = (2.0L / 3.0L) * z * std::sqrt(z);
    const long double inv_zeta = 1.0L / zeta;
    const long double z14 = std::pow(z, 0.25L);
    const long double arg = zeta + 0.25L * static_cast<long double>(M_PI);
    const long double s = std::sin(arg);
    const long double co = std::cos(arg);
    long double P, Q, R, S;
    even_odd_sums(c.u, inv_zeta, P, Q);
    even_odd_sums(c.v, inv_zeta, R, S);
    const long double inv_sqrt_pi = 1.0L / std::sqrt(static_cast<long double>(M_PI));
    const long double ai = inv_sqrt_pi / z14 * (s * P - co * Q);
    const long double aip = -inv_sqrt_pi * z14 * (co * R + s * S);
    return {static_cast<double>(ai), static_cast<double>(aip)};
}

}  // namespace

double airy_ai(double x) { return eval_both(x).ai; }

double airy_ai_prime(double x) { return eval_both(x).aip; }

double airy_first_zero() {
    static const double zero = [] {
        double lo = -2.5, hi = -2.2;  // Ai(lo) < 0 < Ai(hi)
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (airy_ai(mid) < 0.0)
                lo = mid;
            else
                hi = mid;
            if (hi - lo < 1e-15) break;
        }
        return 0.5 * (lo + hi);
    }();
    return zero;
}

}  // namespace qpl
