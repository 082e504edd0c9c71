// NEON kernel variants for aarch64 (float64x2 lanes).

#include <arm_neon.h>

#include "qaplon/kernels.hpp"

namespace qaplon::kernels {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + k), vld1q_f64(y + k));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + k + 2), vld1q_f64(y + k + 2));
  }
  double s = vaddvq_f64(acc0) + vaddvq_f64(acc1);
  for (; k < n; ++k) s += x[k] * y[k];
  return s;
}

double sum_neon(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) acc = vaddq_f64(acc, vld1q_f64(x + k));
  double s = vaddvq_f64(acc);
  for (; k < n; ++k) s += x[k];
  return s;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2)
    vst1q_f64(y + k, vfmaq_f64(vld1q_f64(y + k), va, vld1q_f64(x + k)));
  for (; k < n; ++k) y[k] += a * x[k];
}

void scale_neon(double* x, double a, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) vst1q_f64(x + k, vmulq_f64(vld1q_f64(x + k), va));
  for (; k < n; ++k) x[k] *= a;
}

double diff_dot_neon(const double* ar, const double* as, const double* cr,
                     const double* cs, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    float64x2_t da = vsubq_f64(vld1q_f64(ar + k), vld1q_f64(as + k));
    float64x2_t dc = vsubq_f64(vld1q_f64(cs + k), vld1q_f64(cr + k));
    acc = vfmaq_f64(acc, da, dc);
  }
  double s = vaddvq_f64(acc);
  for (; k < n; ++k) s += (ar[k] - as[k]) * (cs[k] - cr[k]);
  return s;
}

double max_abs_diff_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t vmax = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2)
    vmax = vmaxq_f64(vmax, vabsq_f64(vsubq_f64(vld1q_f64(x + k), vld1q_f64(y + k))));
  double m = vmaxvq_f64(vmax);
  for (; k < n; ++k) {
    double d = x[k] - y[k];
    if (d < 0) d = -d;
    if (d > m) m = d;
  }
  return m;
}

}  // namespace

const Ops* neon_ops() {
  static const Ops ops = {
      "neon",      dot_neon,      sum_neon,
      axpy_neon,   scale_neon,    diff_dot_neon,
      max_abs_diff_neon,
  };
  return &ops;
}

}  // namespace qaplon::kernels
