#pragma once

// Minimal complex FFT: iterative radix-2 for power-of-two lengths, direct DFT
// otherwise. Lengths here are angular grid sizes (<= a few thousand), so the
// fallback stays affordable and everything remains bit-deterministic.

#include <complex>
#include <vector>

namespace liouville {

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

}  // namespace liouville
