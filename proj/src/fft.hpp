#pragma once

#include <complex>
#include <span>

namespace halfwave::detail {

// Unnormalized in-place DFTs.  forward: sum_j a_j e^{-2 pi i jk/n},
// backward: sum_k a_k e^{+2 pi i jk/n}.  Plans are cached per length and
// execution is thread safe.
void dft_forward(std::span<std::complex<double>> data);
void dft_backward(std::span<std::complex<double>> data);

}  // namespace halfwave::detail
