#include "qaplon/kernels.hpp"

#include <atomic>

namespace qaplon::kernels {

#if QAPLON_WITH_AVX2
const Ops* avx2_ops();
#endif
#if QAPLON_WITH_NEON
const Ops* neon_ops();
#endif

namespace {

const Ops* detect_best() {
#if QAPLON_WITH_AVX2
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return avx2_ops();
#endif
#if QAPLON_WITH_NEON
  return neon_ops();
#endif
  return &scalar();
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

const Ops& active() {
  const Ops* ops = g_active.load(std::memory_order_acquire);
  if (!ops) {
    ops = detect_best();
    g_active.store(ops, std::memory_order_release);
  }
  return *ops;
}

std::vector<const Ops*> available() {
  std::vector<const Ops*> out;
#if QAPLON_WITH_AVX2
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    out.push_back(avx2_ops());
#endif
#if QAPLON_WITH_NEON
  out.push_back(neon_ops());
#endif
  out.push_back(&scalar());
  return out;
}

bool select(std::string_view name) {
  if (name == "auto") {
    g_active.store(detect_best(), std::memory_order_release);
    return true;
  }
  for (const Ops* ops : available()) {
    if (name == ops->name) {
      g_active.store(ops, std::memory_order_release);
      return true;
    }
  }
  return false;
}

}  // namespace qaplon::kernels
