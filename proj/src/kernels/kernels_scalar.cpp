#include "kernels_impl.hpp"

namespace symw::detail {
namespace {

// Written on (re, im) pairs so the arithmetic matches the SIMD variant term
// for term, without the NaN-recovery branch of std::complex operator*.

void cmul(cplx* x, const cplx* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    const double yr = y[k].real(), yi = y[k].imag();
    x[k] = cplx(xr * yr - xi * yi, xi * yr + xr * yi);
  }
}

void scale(cplx* x, cplx a, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    x[k] = cplx(xr * ar - xi * ai, xi * ar + xr * ai);
  }
}

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    y[k] = cplx(y[k].real() + (xr * ar - xi * ai), y[k].imag() + (xi * ar + xr * ai));
  }
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = a[k].real(), ai = a[k].imag();
    const double br = b[k].real(), bi = b[k].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm2(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
  return s;
}

void abs2(const cplx* a, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{"scalar", cmul, scale, axpy, cdot, norm2, abs2};
  return table;
}

}  // namespace symw::detail
