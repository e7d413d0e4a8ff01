#pragma once

// Pointwise and reduction kernels over complex amplitude buffers.
//
// Every kernel has a scalar reference implementation; an AVX2+FMA variant is
// compiled on x86-64 and selected at runtime when the CPU supports it. The two
// variants agree to rounding (reductions differ only in summation order).

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace symw {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  std::string_view name;
  // x[k] *= y[k]
  void (*cmul)(cplx* x, const cplx* y, std::size_t n);
  // x[k] *= a
  void (*scale)(cplx* x, cplx a, std::size_t n);
  // y[k] += a * x[k]
  void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // sum conj(a[k]) * b[k]
  cplx (*cdot)(const cplx* a, const cplx* b, std::size_t n);
  // sum |a[k]|^2
  double (*norm2)(const cplx* a, std::size_t n);
  // out[k] = |a[k]|^2
  void (*abs2)(const cplx* a, double* out, std::size_t n);
};

const KernelTable& scalar_kernel_table() noexcept;
// nullptr when the variant was not compiled for this target.
const KernelTable* avx2_kernel_table() noexcept;

bool isa_supported(Isa isa) noexcept;
std::vector<Isa> supported_isas();
std::string_view to_string(Isa isa) noexcept;

// Process-wide selection; defaults to the widest supported ISA. Not meant to
// be flipped while kernels are running on other threads.
void set_active_isa(Isa isa);
Isa active_isa() noexcept;
const KernelTable& active_kernels() noexcept;

namespace kernels {

void cmul(std::span<cplx> x, std::span<const cplx> y);
void scale(std::span<cplx> x, cplx a);
void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y);
cplx cdot(std::span<const cplx> a, std::span<const cplx> b);
double norm2(std::span<const cplx> a);
void abs2(std::span<const cplx> a, std::span<double> out);

}  // namespace kernels
}  // namespace symw
