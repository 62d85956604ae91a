#pragma once

#include <complex>
#include <span>

namespace iafc {

// Transform pair used throughout: analysis X_k = sum_n x_n e^{-i 2pi kn/N},
// synthesis x_n = (1/N) sum_k X_k e^{+i 2pi kn/N}. With e^{+iwt} synthesis
// the transfer function's poles lie in the upper half plane, so the response
// is causal and the echo appears at positive delay.
//
// Plans are cached per thread and per size; identical inputs give identical
// outputs regardless of which threads ran before.
void fft_forward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);
void fft_inverse(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);

}  // namespace iafc
