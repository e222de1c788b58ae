#pragma once

#include <stdexcept>
#include <string>

namespace qpl {

// Error taxonomy shared by all modules.  The CLI maps these onto exit codes:
// usage/config -> 2, numerical stability/accuracy -> 3, sign collapse -> 4.

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a signed ensemble has lost its mean sign and ratio estimates
// are no longer meaningful.  Carries the diagnostics at the time of failure.
struct SignCollapseError : std::runtime_error {
    double mean_sign = 0.0;
    double effective_sample_size = 0.0;
    double negative_slice_fraction = 0.0;

    explicit SignCollapseError(const std::string& msg) : std::runtime_error(msg) {}
    SignCollapseError(const std::string& msg, double ms, double ess, double neg_frac)
        : std::runtime_error(msg),
          mean_sign(ms),
          effective_sample_size(ess),
          negative_slice_fraction(neg_frac) {}
};

}  // namespace qpl
