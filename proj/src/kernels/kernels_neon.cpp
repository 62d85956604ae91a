#include "iafc/kernels.hpp"

#include <arm_neon.h>

// 2-wide NEON (AArch64) variants. Advanced SIMD is baseline on AArch64, so
// no runtime probe is needed.

namespace iafc::kernels {
namespace {

void comb_accumulate_neon(const double* omega, std::size_t n,
                          const TeethView& teeth,
                          double* d_re, double* d_im) {
    const double h = teeth.half_gamma;
    const double h2 = h * h;
    const float64x2_t hv = vdupq_n_f64(h);
    const float64x2_t h2v = vdupq_n_f64(h2);
    for (std::size_t j = 0; j < teeth.count; ++j) {
        const double w = teeth.weight[j];
        const double del = teeth.detuning[j];
        const float64x2_t wv = vdupq_n_f64(w);
        const float64x2_t dv = vdupq_n_f64(del);
        std::size_t i = 0;
        for (; i + 2 <= n; i += 2) {
            const float64x2_t x = vaddq_f64(vld1q_f64(omega + i), dv);
            const float64x2_t den = vfmaq_f64(h2v, x, x);
            const float64x2_t inv = vdivq_f64(wv, den);
            vst1q_f64(d_re + i, vfmaq_f64(vld1q_f64(d_re + i), hv, inv));
            vst1q_f64(d_im + i, vfmsq_f64(vld1q_f64(d_im + i), x, inv));
        }
        for (; i < n; ++i) {
            const double x = omega[i] + del;
            const double inv = w / (h2 + x * x);
            d_re[i] += h * inv;
            d_im[i] -= x * inv;
        }
    }
}

void transfer_map_neon(const double* omega, std::size_t n,
                       double kappa, double delta_c,
                       double* re, double* im) {
    const double hk = 0.5 * kappa;
    const float64x2_t hkv = vdupq_n_f64(hk);
    const float64x2_t kv = vdupq_n_f64(kappa);
    const float64x2_t dcv = vdupq_n_f64(delta_c);
    const float64x2_t one = vdupq_n_f64(1.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t dr = vaddq_f64(vld1q_f64(re + i), hkv);
        const float64x2_t di = vaddq_f64(vld1q_f64(im + i),
                                         vaddq_f64(vld1q_f64(omega + i), dcv));
        const float64x2_t den = vfmaq_f64(vmulq_f64(di, di), dr, dr);
        const float64x2_t inv = vdivq_f64(kv, den);
        vst1q_f64(re + i, vfmsq_f64(one, dr, inv));
        vst1q_f64(im + i, vmulq_f64(di, inv));
    }
    for (; i < n; ++i) {
        const double dr = re[i] + hk;
        const double di = im[i] + omega[i] + delta_c;
        const double inv = kappa / (dr * dr + di * di);
        re[i] = 1.0 - dr * inv;
        im[i] = di * inv;
    }
}

void apply_filter_neon(std::complex<double>* z, const std::complex<double>* h,
                       std::size_t n) {
    double* p = reinterpret_cast<double*>(z);
    const double* q = reinterpret_cast<const double*>(h);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2x2_t zz = vld2q_f64(p + 2 * i);  // val[0]=re, val[1]=im
        const float64x2x2_t hh = vld2q_f64(q + 2 * i);
        float64x2x2_t out;
        out.val[0] = vfmsq_f64(vmulq_f64(zz.val[0], hh.val[0]), zz.val[1], hh.val[1]);
        out.val[1] = vfmaq_f64(vmulq_f64(zz.val[1], hh.val[0]), zz.val[0], hh.val[1]);
        vst2q_f64(p + 2 * i, out);
    }
    for (; i < n; ++i) {
        const double a = p[2 * i], b = p[2 * i + 1];
        const double c = q[2 * i], d = q[2 * i + 1];
        p[2 * i] = a * c - b * d;
        p[2 * i + 1] = a * d + b * c;
    }
}

void magnitude_squared_neon(const std::complex<double>* z, std::size_t n,
                            double* out) {
    const double* p = reinterpret_cast<const double*>(z);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2x2_t zz = vld2q_f64(p + 2 * i);
        vst1q_f64(out + i, vfmaq_f64(vmulq_f64(zz.val[1], zz.val[1]),
                                     zz.val[0], zz.val[0]));
    }
    for (; i < n; ++i)
        out[i] = p[2 * i] * p[2 * i] + p[2 * i + 1] * p[2 * i + 1];
}

}  // namespace

const Dispatch* neon_kernels() {
    static const Dispatch d{comb_accumulate_neon, transfer_map_neon,
                            apply_filter_neon, magnitude_squared_neon, "neon"};
    return &d;
}

}  // namespace iafc::kernels
