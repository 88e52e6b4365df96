#pragma once

#include <complex>
#include <vector>

#include "omchaos/types.hpp"

namespace omchaos {

// In-place iterative radix-2 FFT; size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& data, bool inverse = false);

bool is_power_of_two(std::size_t n);

// Periodic Hann window of length n.
std::vector<double> hann_window(std::size_t n);

}  // namespace omchaos
