#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace kdvbbm::detail {

// Unnormalized complex DFTs backed by FFTW. Plans are cached per size;
// both calls are safe to use concurrently from several threads.
// out[k] = sum_j in[j] exp(-2 pi i j k / n)
void fft_forward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);
// out[j] = sum_k in[k] exp(+2 pi i j k / n)
void fft_backward(std::span<const std::complex<double>> in,
                  std::span<std::complex<double>> out);

}  // namespace kdvbbm::detail
