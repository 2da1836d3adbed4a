#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

#include "symstab/kernels/modp.hpp"

namespace symstab::kernels {

void axpy_mod_neon(std::span<double> dst, std::span<const double> src, double factor,
                   const ModPrime& p) {
  const std::size_t n = dst.size();
  const float64x2_t vp = vdupq_n_f64(p.p);
  const float64x2_t vinv = vdupq_n_f64(p.inv);
  const float64x2_t vf = vdupq_n_f64(factor);
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vld1q_f64(dst.data() + i);
    const float64x2_t s = vld1q_f64(src.data() + i);
    const float64x2_t t = vaddq_f64(d, vmulq_f64(vf, s));
    const float64x2_t q = vrndmq_f64(vmulq_f64(t, vinv));
    float64x2_t r = vsubq_f64(t, vmulq_f64(q, vp));
    r = vbslq_f64(vcltq_f64(r, zero), vaddq_f64(r, vp), r);
    r = vbslq_f64(vcgeq_f64(r, vp), vsubq_f64(r, vp), r);
    vst1q_f64(dst.data() + i, r);
  }
  for (; i < n; ++i) {
    const double t = dst[i] + factor * src[i];
    const double q = std::floor(t * p.inv);
    double r = t - q * p.p;
    if (r < 0) r += p.p;
    if (r >= p.p) r -= p.p;
    dst[i] = r;
  }
}

}  // namespace symstab::kernels

#endif
