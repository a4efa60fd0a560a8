#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace mfdcca::detail {

// In-place radix-2 FFT; a.size() must be a power of two. Forward transform
// uses the e^{-2 pi i jk/n} kernel; inverse is unnormalized.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);

std::size_t next_pow2(std::size_t n);

}  // namespace mfdcca::detail
