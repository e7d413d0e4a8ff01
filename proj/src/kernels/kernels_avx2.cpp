#include <immintrin.h>

#include "kernels_impl.hpp"

namespace symw::detail {
namespace {

// Two complex values per 256-bit register laid out as [re0, im0, re1, im1].

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d mul2(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void cmul(cplx* x, const cplx* y, std::size_t n) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) store2(x + k, mul2(load2(x + k), load2(y + k)));
  for (; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    x[k] = cplx(xr * y[k].real() - xi * y[k].imag(), xi * y[k].real() + xr * y[k].imag());
  }
}

void scale(cplx* x, cplx a, std::size_t n) {
  const __m256d av = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) store2(x + k, mul2(load2(x + k), av));
  for (; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    x[k] = cplx(xr * a.real() - xi * a.imag(), xi * a.real() + xr * a.imag());
  }
}

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d av = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) store2(y + k, _mm256_add_pd(load2(y + k), mul2(load2(x + k), av)));
  for (; k < n; ++k) {
    const double xr = x[k].real(), xi = x[k].imag();
    y[k] = cplx(y[k].real() + (xr * a.real() - xi * a.imag()),
                y[k].imag() + (xi * a.real() + xr * a.imag()));
  }
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc_direct = _mm256_setzero_pd();   // [ar*br, ai*bi, ...]
  __m256d acc_crossed = _mm256_setzero_pd();  // [ar*bi, ai*br, ...]
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d av = load2(a + k);
    const __m256d bv = load2(b + k);
    acc_direct = _mm256_fmadd_pd(av, bv, acc_direct);
    acc_crossed = _mm256_fmadd_pd(av, _mm256_permute_pd(bv, 0x5), acc_crossed);
  }
  alignas(32) double c[4];
  _mm256_store_pd(c, acc_crossed);
  double re = hsum(acc_direct);
  double im = (c[0] + c[2]) - (c[1] + c[3]);
  for (; k < n; ++k) {
    re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
  }
  return {re, im};
}

double norm2(const cplx* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d av = load2(a + k);
    acc = _mm256_fmadd_pd(av, av, acc);
  }
  double s = hsum(acc);
  for (; k < n; ++k) s += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
  return s;
}

void abs2(const cplx* a, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d v0 = load2(a + k);
    const __m256d v1 = load2(a + k + 2);
    // hadd gives [s0, s2, s1, s3]
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    _mm256_storeu_pd(out + k, _mm256_permute4x64_pd(h, 0xD8));
  }
  for (; k < n; ++k) out[k] = a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{"avx2", cmul, scale, axpy, cdot, norm2, abs2};
  return table;
}

}  // namespace symw::detail
