#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace qaplon::kernels {

/// Dense inner-loop primitives used by the hot paths (swap-delta neighborhood
/// scans, random-walk lag correlations, MCL expansion). Each backend provides
/// the same table; the scalar table is the reference implementation that the
/// SIMD variants are equivalence-tested against.
struct Ops {
  const char* name;

  /// Σ x[k]·y[k]
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// Σ x[k]
  double (*sum)(const double* x, std::size_t n);
  /// y[k] += a·x[k]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  /// x[k] *= a
  void (*scale)(double* x, double a, std::size_t n);
  /// Σ (ar[k]−as[k])·(cs[k]−cr[k]) — the swap-delta row kernel
  double (*diff_dot)(const double* ar, const double* as, const double* cr,
                     const double* cs, std::size_t n);
  /// max_k |x[k]−y[k]|
  double (*max_abs_diff)(const double* x, const double* y, std::size_t n);
};

/// Reference path, always available.
const Ops& scalar();

/// Currently selected backend (best available unless select() overrode it).
const Ops& active();

/// All backends usable on this machine, best first.
std::vector<const Ops*> available();

/// Force a backend by name ("scalar", "avx2", "neon") or "auto" to restore
/// runtime detection. Returns false if the name is unknown or unsupported
/// on this CPU.
bool select(std::string_view name);

}  // namespace qaplon::kernels
