#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace iafc::kernels {

// Structure-of-arrays view over comb teeth for the hot loops.
// weight[j] = sigma_j * g_j^2, detuning[j] = delta_j, half_gamma = gamma/2,
// all on the rad/s scale.
struct TeethView {
    const double* weight = nullptr;
    const double* detuning = nullptr;
    std::size_t count = 0;
    double half_gamma = 0.0;
};

// d(w_i) += sum_j weight_j / (i(w_i + delta_j) + gamma/2), split into re/im.
// Accumulating means disjoint tooth ranges applied in order compose
// bit-exactly with a single full pass.
using CombAccumulateFn = void (*)(const double* omega, std::size_t n,
                                  const TeethView& teeth,
                                  double* d_re, double* d_im);

// In place: (re, im) holding D(w) becomes H(w) = 1 - kappa / (i(w + delta_c) + D + kappa/2).
using TransferMapFn = void (*)(const double* omega, std::size_t n,
                               double kappa, double delta_c,
                               double* re, double* im);

// z_i *= h_i, both interleaved complex
using ApplyFilterFn = void (*)(std::complex<double>* z,
                               const std::complex<double>* h, std::size_t n);

// out_i = |z_i|^2
using MagnitudeSqFn = void (*)(const std::complex<double>* z, std::size_t n,
                               double* out);

struct Dispatch {
    CombAccumulateFn comb_accumulate;
    TransferMapFn transfer_map;
    ApplyFilterFn apply_filter;
    MagnitudeSqFn magnitude_squared;
    const char* name;
};

// Kernel set picked once per process: the IAFC_KERNELS env var ("scalar",
// "avx2", "neon") wins, otherwise the widest set the CPU supports. The choice
// never changes afterwards, which keeps results reproducible within a run.
const Dispatch& active();

const Dispatch& scalar_kernels();

// nullptr if the name is unknown or the CPU lacks the instruction set.
const Dispatch* find(std::string_view name);

// Every set usable on this machine, scalar first.
std::vector<const Dispatch*> supported();

}  // namespace iafc::kernels
