#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "symstab/kernels/modp.hpp"

namespace symstab::kernels {

void axpy_mod_avx2(std::span<double> dst, std::span<const double> src, double factor,
                   const ModPrime& p) {
  const std::size_t n = dst.size();
  const __m256d vp = _mm256_set1_pd(p.p);
  const __m256d vinv = _mm256_set1_pd(p.inv);
  const __m256d vf = _mm256_set1_pd(factor);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(dst.data() + i);
    const __m256d s = _mm256_loadu_pd(src.data() + i);
    const __m256d t = _mm256_add_pd(d, _mm256_mul_pd(vf, s));
    const __m256d q = _mm256_floor_pd(_mm256_mul_pd(t, vinv));
    __m256d r = _mm256_sub_pd(t, _mm256_mul_pd(q, vp));
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), vp));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, vp, _CMP_GE_OQ), vp));
    _mm256_storeu_pd(dst.data() + i, r);
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
