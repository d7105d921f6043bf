#include "evc/kernels.hpp"

#include <atomic>

namespace evc::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(EVC_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<const Ops*> g_active{nullptr};

const Ops* pick_default() {
  return cpu_has_avx2() ? &avx2_ops() : &scalar_ops();
}

}  // namespace

bool avx2_supported() { return cpu_has_avx2(); }

const Ops& active() {
  const Ops* ops = g_active.load(std::memory_order_acquire);
  if (!ops) {
    ops = pick_default();
    g_active.store(ops, std::memory_order_release);
  }
  return *ops;
}

bool force(std::string_view name) {
  if (name == "scalar") {
    g_active.store(&scalar_ops(), std::memory_order_release);
    return true;
  }
  if (name == "avx2") {
    if (!cpu_has_avx2()) return false;
    g_active.store(&avx2_ops(), std::memory_order_release);
    return true;
  }
  if (name == "auto") {
    g_active.store(pick_default(), std::memory_order_release);
    return true;
  }
  return false;
}

}  // namespace evc::kernels
