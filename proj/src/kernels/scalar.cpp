#include "mhx/kernels.hpp"

namespace mhx::kernels::scalar {

void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
  }
}

cplx dot(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0, im = 0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
  }
  return {re, im};
}

}  // namespace mhx::kernels::scalar
