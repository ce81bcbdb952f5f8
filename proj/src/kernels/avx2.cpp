#include "mhx/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define MHX_HAVE_X86 1
#endif

namespace mhx::kernels::avx2 {

#ifdef MHX_HAVE_X86

// std::complex<double> is laid out as {re, im}, so one __m256d holds two values.

__attribute__((target("avx2,fma"))) void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xp + 2 * i);
    __m256d vy = _mm256_loadu_pd(yp + 2 * i);
    __m256d swapped = _mm256_permute_pd(vx, 0x5);  // {xi, xr, ...}
    __m256d t = _mm256_mul_pd(ai, swapped);
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    __m256d prod = _mm256_fmaddsub_pd(ar, vx, t);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(vy, prod));
  }
  if (i < n) scalar::axpy(n - i, a, x + i, y + i);
}

__attribute__((target("avx2,fma"))) cplx dot(std::size_t n, const cplx* x, const cplx* y) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xp + 2 * i);
    __m256d vy = _mm256_loadu_pd(yp + 2 * i);
    __m256d xr = _mm256_movedup_pd(vx);
    __m256d xi = _mm256_permute_pd(vx, 0xF);
    __m256d t = _mm256_mul_pd(xi, _mm256_permute_pd(vy, 0x5));
    acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(xr, vy, t));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  cplx s{lanes[0] + lanes[2], lanes[1] + lanes[3]};
  if (i < n) s += scalar::dot(n - i, x + i, y + i);
  return s;
}

#else

void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) { scalar::axpy(n, a, x, y); }
cplx dot(std::size_t n, const cplx* x, const cplx* y) { return scalar::dot(n, x, y); }

#endif

}  // namespace mhx::kernels::avx2
