#include <atomic>
#include <cassert>

#include "kernels_impl.hpp"
#include "symw/error.hpp"

namespace symw {
namespace {

Isa widest_supported() noexcept {
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<const KernelTable*>& active_slot() noexcept {
  static std::atomic<const KernelTable*> slot{
      widest_supported() == Isa::Avx2 ? avx2_kernel_table() : &scalar_kernel_table()};
  return slot;
}

}  // namespace

const KernelTable& scalar_kernel_table() noexcept { return detail::scalar_table(); }

const KernelTable* avx2_kernel_table() noexcept {
#ifdef SYMW_HAVE_AVX2
  return &detail::avx2_table();
#else
  return nullptr;
#endif
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(SYMW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out{Isa::Scalar};
  if (isa_supported(Isa::Avx2)) out.push_back(Isa::Avx2);
  return out;
}

std::string_view to_string(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) raise(ErrorCode::RuntimeFailure, "ISA not supported on this CPU: " + std::string(to_string(isa)));
  active_slot().store(isa == Isa::Avx2 ? avx2_kernel_table() : &scalar_kernel_table());
}

Isa active_isa() noexcept {
  return active_slot().load() == &scalar_kernel_table() ? Isa::Scalar : Isa::Avx2;
}

const KernelTable& active_kernels() noexcept { return *active_slot().load(); }

namespace kernels {

void cmul(std::span<cplx> x, std::span<const cplx> y) {
  assert(x.size() == y.size());
  active_kernels().cmul(x.data(), y.data(), x.size());
}

void scale(std::span<cplx> x, cplx a) { active_kernels().scale(x.data(), a, x.size()); }

void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  assert(x.size() == y.size());
  active_kernels().axpy(a, x.data(), y.data(), x.size());
}

cplx cdot(std::span<const cplx> a, std::span<const cplx> b) {
  assert(a.size() == b.size());
  return active_kernels().cdot(a.data(), b.data(), a.size());
}

double norm2(std::span<const cplx> a) { return active_kernels().norm2(a.data(), a.size()); }

void abs2(std::span<const cplx> a, std::span<double> out) {
  assert(a.size() == out.size());
  active_kernels().abs2(a.data(), out.data(), a.size());
}

}  // namespace kernels
}  // namespace symw
