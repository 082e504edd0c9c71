// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma and picked at runtime
// only when the CPU reports AVX2, so this translation unit must not be
// reached through any other path on older hardware.

#include <immintrin.h>

#include "qaplon/kernels.hpp"

namespace qaplon::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k + 4), _mm256_loadu_pd(y + k + 4), acc1);
  }
  if (k + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k), acc0);
    k += 4;
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += x[k] * y[k];
  return s;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + k));
  double s = hsum(acc);
  for (; k < n; ++k) s += x[k];
  return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d vy = _mm256_loadu_pd(y + k);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + k), vy);
    _mm256_storeu_pd(y + k, vy);
  }
  for (; k < n; ++k) y[k] += a * x[k];
}

void scale_avx2(double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4)
    _mm256_storeu_pd(x + k, _mm256_mul_pd(_mm256_loadu_pd(x + k), va));
  for (; k < n; ++k) x[k] *= a;
}

double diff_dot_avx2(const double* ar, const double* as, const double* cr,
                     const double* cs, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d da = _mm256_sub_pd(_mm256_loadu_pd(ar + k), _mm256_loadu_pd(as + k));
    __m256d dc = _mm256_sub_pd(_mm256_loadu_pd(cs + k), _mm256_loadu_pd(cr + k));
    acc = _mm256_fmadd_pd(da, dc, acc);
  }
  double s = hsum(acc);
  for (; k < n; ++k) s += (ar[k] - as[k]) * (cs[k] - cr[k]);
  return s;
}

double max_abs_diff_avx2(const double* x, const double* y, std::size_t n) {
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d vmax = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k));
    vmax = _mm256_max_pd(vmax, _mm256_and_pd(d, absmask));
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, vmax);
  double m = lanes[0];
  for (int j = 1; j < 4; ++j)
    if (lanes[j] > m) m = lanes[j];
  for (; k < n; ++k) {
    double d = x[k] - y[k];
    if (d < 0) d = -d;
    if (d > m) m = d;
  }
  return m;
}

}  // namespace

const Ops* avx2_ops() {
  static const Ops ops = {
      "avx2",      dot_avx2,      sum_avx2,
      axpy_avx2,   scale_avx2,    diff_dot_avx2,
      max_abs_diff_avx2,
  };
  return &ops;
}

}  // namespace qaplon::kernels
