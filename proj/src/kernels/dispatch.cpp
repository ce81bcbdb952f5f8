#include <atomic>

#include "mhx/kernels.hpp"

namespace mhx::kernels {

namespace {

bool detect_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect_avx2() ? Isa::avx2 : Isa::scalar};
  return isa;
}

}  // namespace

bool avx2_supported() {
  static const bool ok = detect_avx2();
  return ok;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_supported()) isa = Isa::scalar;
  current().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
  if (active_isa() == Isa::avx2)
    avx2::axpy(n, a, x, y);
  else
    scalar::axpy(n, a, x, y);
}

cplx dot(std::size_t n, const cplx* x, const cplx* y) {
  return active_isa() == Isa::avx2 ? avx2::dot(n, x, y) : scalar::dot(n, x, y);
}

}  // namespace mhx::kernels
