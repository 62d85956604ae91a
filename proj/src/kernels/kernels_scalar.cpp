#include "iafc/kernels.hpp"

// Reference kernels. Tooth-major loop order is part of the contract: the
// vector variants keep the same order so summation differs only in FMA
// rounding.

namespace iafc::kernels {
namespace {

void comb_accumulate_scalar(const double* omega, std::size_t n,
                            const TeethView& teeth,
                            double* d_re, double* d_im) {
    const double h = teeth.half_gamma;
    const double h2 = h * h;
    for (std::size_t j = 0; j < teeth.count; ++j) {
        const double w = teeth.weight[j];
        const double del = teeth.detuning[j];
        for (std::size_t i = 0; i < n; ++i) {
            const double x = omega[i] + del;
            const double inv = w / (h2 + x * x);
            d_re[i] += h * inv;
            d_im[i] -= x * inv;
        }
    }
}

void transfer_map_scalar(const double* omega, std::size_t n,
                         double kappa, double delta_c,
                         double* re, double* im) {
    const double hk = 0.5 * kappa;
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = re[i] + hk;
        const double di = im[i] + omega[i] + delta_c;
        const double inv = kappa / (dr * dr + di * di);
        re[i] = 1.0 - dr * inv;
        im[i] = di * inv;
    }
}

void apply_filter_scalar(std::complex<double>* z, const std::complex<double>* h,
                         std::size_t n) {
    double* p = reinterpret_cast<double*>(z);
    const double* q = reinterpret_cast<const double*>(h);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = p[2 * i], b = p[2 * i + 1];
        const double c = q[2 * i], d = q[2 * i + 1];
        p[2 * i] = a * c - b * d;
        p[2 * i + 1] = a * d + b * c;
    }
}

void magnitude_squared_scalar(const std::complex<double>* z, std::size_t n,
                              double* out) {
    const double* p = reinterpret_cast<const double*>(z);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = p[2 * i] * p[2 * i] + p[2 * i + 1] * p[2 * i + 1];
}

}  // namespace

const Dispatch& scalar_kernels() {
    static const Dispatch d{comb_accumulate_scalar, transfer_map_scalar,
                            apply_filter_scalar, magnitude_squared_scalar,
                            "scalar"};
    return d;
}

}  // namespace iafc::kernels
