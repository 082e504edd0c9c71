#include "qaplon/kernels.hpp"

namespace qaplon::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += x[k] * y[k];
  return s;
}

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += x[k];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += a * x[k];
}

void scale_scalar(double* x, double a, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) x[k] *= a;
}

double diff_dot_scalar(const double* ar, const double* as, const double* cr,
                       const double* cs, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += (ar[k] - as[k]) * (cs[k] - cr[k]);
  return s;
}

double max_abs_diff_scalar(const double* x, const double* y, std::size_t n) {
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double d = x[k] - y[k];
    if (d < 0) d = -d;
    if (d > m) m = d;
  }
  return m;
}

}  // namespace

const Ops& scalar() {
  static const Ops ops = {
      "scalar",      dot_scalar,      sum_scalar,
      axpy_scalar,   scale_scalar,    diff_dot_scalar,
      max_abs_diff_scalar,
  };
  return ops;
}

}  // namespace qaplon::kernels
