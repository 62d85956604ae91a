#include "iafc/kernels.hpp"

#include <immintrin.h>

// 4-wide AVX2/FMA variants of the scalar kernels. Compiled with -mavx2 -mfma
// but only dispatched after a cpuid check, so the binary still runs on older
// x86-64 parts.

namespace iafc::kernels {
namespace {

constexpr int kPermEvenOdd = 0xD8;  // lane order (0,2,1,3)

void comb_accumulate_avx2(const double* omega, std::size_t n,
                          const TeethView& teeth,
                          double* d_re, double* d_im) {
    const double h = teeth.half_gamma;
    const double h2 = h * h;
    const __m256d hv = _mm256_set1_pd(h);
    const __m256d h2v = _mm256_set1_pd(h2);
    for (std::size_t j = 0; j < teeth.count; ++j) {
        const double w = teeth.weight[j];
        const double del = teeth.detuning[j];
        const __m256d wv = _mm256_set1_pd(w);
        const __m256d dv = _mm256_set1_pd(del);
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            const __m256d x = _mm256_add_pd(_mm256_loadu_pd(omega + i), dv);
            const __m256d den = _mm256_fmadd_pd(x, x, h2v);
            const __m256d inv = _mm256_div_pd(wv, den);
            __m256d re = _mm256_loadu_pd(d_re + i);
            __m256d im = _mm256_loadu_pd(d_im + i);
            re = _mm256_fmadd_pd(hv, inv, re);
            im = _mm256_fnmadd_pd(x, inv, im);
            _mm256_storeu_pd(d_re + i, re);
            _mm256_storeu_pd(d_im + i, im);
        }
        for (; i < n; ++i) {
            const double x = omega[i] + del;
            const double inv = w / (h2 + x * x);
            d_re[i] += h * inv;
            d_im[i] -= x * inv;
        }
    }
}

void transfer_map_avx2(const double* omega, std::size_t n,
                       double kappa, double delta_c,
                       double* re, double* im) {
    const double hk = 0.5 * kappa;
    const __m256d hkv = _mm256_set1_pd(hk);
    const __m256d kv = _mm256_set1_pd(kappa);
    const __m256d dcv = _mm256_set1_pd(delta_c);
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dr = _mm256_add_pd(_mm256_loadu_pd(re + i), hkv);
        const __m256d di = _mm256_add_pd(_mm256_loadu_pd(im + i),
                                         _mm256_add_pd(_mm256_loadu_pd(omega + i), dcv));
        const __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
        const __m256d inv = _mm256_div_pd(kv, den);
        _mm256_storeu_pd(re + i, _mm256_fnmadd_pd(dr, inv, one));
        _mm256_storeu_pd(im + i, _mm256_mul_pd(di, inv));
    }
    for (; i < n; ++i) {
        const double dr = re[i] + hk;
        const double di = im[i] + omega[i] + delta_c;
        const double inv = kappa / (dr * dr + di * di);
        re[i] = 1.0 - dr * inv;
        im[i] = di * inv;
    }
}

void apply_filter_avx2(std::complex<double>* z, const std::complex<double>* h,
                       std::size_t n) {
    double* p = reinterpret_cast<double*>(z);
    const double* q = reinterpret_cast<const double*>(h);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d zv = _mm256_loadu_pd(p + 2 * i);   // a0 b0 a1 b1
        const __m256d hv = _mm256_loadu_pd(q + 2 * i);   // c0 d0 c1 d1
        const __m256d hre = _mm256_movedup_pd(hv);       // c0 c0 c1 c1
        const __m256d him = _mm256_permute_pd(hv, 0xF);  // d0 d0 d1 d1
        const __m256d zsw = _mm256_permute_pd(zv, 0x5);  // b0 a0 b1 a1
        // (ac - bd, bc + ad) via fused multiply-addsub
        _mm256_storeu_pd(p + 2 * i,
                         _mm256_fmaddsub_pd(zv, hre, _mm256_mul_pd(zsw, him)));
    }
    for (; i < n; ++i) {
        const double a = p[2 * i], b = p[2 * i + 1];
        const double c = q[2 * i], d = q[2 * i + 1];
        p[2 * i] = a * c - b * d;
        p[2 * i + 1] = a * d + b * c;
    }
}

void magnitude_squared_avx2(const std::complex<double>* z, std::size_t n,
                            double* out) {
    const double* p = reinterpret_cast<const double*>(z);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d z01 = _mm256_loadu_pd(p + 2 * i);
        const __m256d z23 = _mm256_loadu_pd(p + 2 * i + 4);
        const __m256d s = _mm256_hadd_pd(_mm256_mul_pd(z01, z01),
                                         _mm256_mul_pd(z23, z23));
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(s, kPermEvenOdd));
    }
    for (; i < n; ++i)
        out[i] = p[2 * i] * p[2 * i] + p[2 * i + 1] * p[2 * i + 1];
}

}  // namespace

const Dispatch* avx2_kernels_if_supported() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
        return nullptr;
    static const Dispatch d{comb_accumulate_avx2, transfer_map_avx2,
                            apply_filter_avx2, magnitude_squared_avx2, "avx2"};
    return &d;
}

}  // namespace iafc::kernels
