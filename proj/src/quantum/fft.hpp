#pragma once

#include <complex>
#include <vector>

#include "core/errors.hpp"

namespace qpl {

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// In-place radix-2 FFT. sign = -1 forward, +1 inverse (inverse divides by n).
void fft(std::vector<std::complex<double>>& a, int sign);

}  // namespace qpl
