#include <algorithm>
#include <cmath>
#include <cstdio>

#include "steppers.hpp"
#include "symw/error.hpp"

namespace symw::detail {

ImplicitFdStepper::ImplicitFdStepper(GridHandle grid, const Hamiltonian& H, double tol, int max_iters)
    : op_(std::move(grid), H), hbar_(H.constants.hbar), tol_(tol), max_iters_(max_iters) {
  H.validate();
  const std::size_t n = op_.grid().size();
  for (auto* buffer : {&b_, &r_, &rhat_, &p_, &v_, &s_, &t_, &work_}) buffer->assign(n, 0.0);
}

void ImplicitFdStepper::apply_system(double tau, std::span<const cplx> in, std::span<cplx> out) const {
  op_.apply(in, out);
  kernels::scale(out, cplx(0.0, tau));
  kernels::axpy(1.0, in, out);
}

// Crank-Nicolson: (1 + i tau H) x = (1 - i tau H) psi, tau = dt / 2hbar,
// solved with unpreconditioned BiCGSTAB started from psi.
void ImplicitFdStepper::advance(std::vector<cplx>& x, double t, double dt) {
  iterations_ = 0;
  residual_ = 0.0;
  if (dt == 0.0) return;
  const double tau = 0.5 * dt / hbar_;
  op_.update(t + 0.5 * dt);

  op_.apply(x, work_);
  b_ = x;
  kernels::axpy(cplx(0.0, -tau), work_, b_);
  const double b_norm = std::sqrt(kernels::norm2(b_));
  if (b_norm == 0.0) {
    std::fill(x.begin(), x.end(), cplx(0.0));
    return;
  }
  const double target = tol_ * b_norm;

  apply_system(tau, x, work_);
  r_ = b_;
  kernels::axpy(-1.0, work_, r_);
  rhat_ = r_;
  std::fill(p_.begin(), p_.end(), cplx(0.0));
  std::fill(v_.begin(), v_.end(), cplx(0.0));
  cplx rho(1.0), alpha(1.0), omega(1.0);
  double r_norm = std::sqrt(kernels::norm2(r_));

  for (int it = 0; it < max_iters_ && r_norm > target; ++it) {
    iterations_ = it + 1;
    const cplx rho_next = kernels::cdot(rhat_, r_);
    if (rho_next == cplx(0.0)) break;
    const cplx beta = (rho_next / rho) * (alpha / omega);
    rho = rho_next;
    // p = r + beta (p - omega v)
    kernels::axpy(-omega, v_, p_);
    kernels::scale(p_, beta);
    kernels::axpy(1.0, r_, p_);
    apply_system(tau, p_, v_);
    const cplx denom = kernels::cdot(rhat_, v_);
    if (denom == cplx(0.0)) break;
    alpha = rho / denom;
    s_ = r_;
    kernels::axpy(-alpha, v_, s_);
    const double s_norm = std::sqrt(kernels::norm2(s_));
    if (s_norm <= target) {
      kernels::axpy(alpha, p_, x);
      r_norm = s_norm;
      break;
    }
    apply_system(tau, s_, t_);
    const double tt = kernels::norm2(t_);
    omega = tt > 0.0 ? kernels::cdot(t_, s_) / tt : cplx(0.0);
    kernels::axpy(alpha, p_, x);
    kernels::axpy(omega, s_, x);
    r_ = s_;
    kernels::axpy(-omega, t_, r_);
    r_norm = std::sqrt(kernels::norm2(r_));
    if (omega == cplx(0.0)) break;
  }
  residual_ = r_norm / b_norm;
  if (!(r_norm <= target)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "BiCGSTAB relative residual %.3e above %.3e after %d iterations", residual_,
                  tol_, iterations_);
    raise(ErrorCode::SolverDiverged, buf);
  }
}

}  // namespace symw::detail
