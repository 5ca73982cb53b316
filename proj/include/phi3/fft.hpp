#pragma once

#include <complex>

namespace phi3 {

// In-place complex DFT on a d-dimensional cube of side G, row-major.
// sign = -1: forward (e^{-2 pi i}); sign = +1: backward. Unnormalized.
// Plans are cached per (d, G, sign); execution is thread-safe.
void fft(int d, int G, std::complex<double>* data, int sign);

}  // namespace phi3
