#pragma once

// Inner loops of the float backend. `scalar` is the reference; `avx2` is an
// AVX2+FMA variant. The unqualified entry points dispatch on the running CPU.

#include <complex>
#include <cstddef>

namespace mhx::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

// y[i] += a * x[i]
void axpy(std::size_t n, cplx a, const cplx* x, cplx* y);
// sum x[i] * y[i]  (bilinear, no conjugation)
cplx dot(std::size_t n, const cplx* x, const cplx* y);

Isa active_isa();
bool avx2_supported();
// Pins the dispatch target; forcing avx2 on a CPU without it falls back to scalar.
void force_isa(Isa isa);
const char* isa_name(Isa isa);

namespace scalar {
void axpy(std::size_t n, cplx a, const cplx* x, cplx* y);
cplx dot(std::size_t n, const cplx* x, const cplx* y);
}  // namespace scalar

namespace avx2 {
void axpy(std::size_t n, cplx a, const cplx* x, cplx* y);
cplx dot(std::size_t n, const cplx* x, const cplx* y);
}  // namespace avx2

}  // namespace mhx::kernels
