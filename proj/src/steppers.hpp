#pragma once

#include <fftw3.h>

#include <memory>

#include "fd_operator.hpp"
#include "symw/propagator.hpp"

namespace symw::detail {

class FftPlan {
 public:
  FftPlan(const Grid& grid, int direction);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  // In-place transform of any buffer of the planned size.
  void execute(cplx* data) const;

 private:
  fftw_plan plan_ = nullptr;
};

class SplitOperatorStepper final : public Stepper {
 public:
  SplitOperatorStepper(GridHandle grid, const Hamiltonian& H, KineticSymbol kinetic);
  void advance(std::vector<cplx>& amplitudes, double t, double dt) override;

 private:
  void refresh_potential_phase(double t_mid, double dt);
  void refresh_kinetic_phase(double t_mid, double dt);

  GridHandle grid_;
  Hamiltonian H_;
  KineticSymbol kinetic_;
  FftPlan forward_;
  FftPlan backward_;
  std::vector<double> potential_;
  std::vector<cplx> potential_phase_;
  std::vector<cplx> kinetic_phase_;
  double potential_dt_ = -1.0;
  double kinetic_dt_ = -1.0;
  bool potential_sampled_ = false;
};

class ImplicitFdStepper final : public Stepper {
 public:
  ImplicitFdStepper(GridHandle grid, const Hamiltonian& H, double tol, int max_iters);
  void advance(std::vector<cplx>& amplitudes, double t, double dt) override;
  int last_iterations() const noexcept override { return iterations_; }
  double last_residual() const noexcept override { return residual_; }

 private:
  // out = (1 + i tau H) in
  void apply_system(double tau, std::span<const cplx> in, std::span<cplx> out) const;

  FdOperator op_;
  double hbar_;
  double tol_;
  int max_iters_;
  int iterations_ = 0;
  double residual_ = 0.0;
  std::vector<cplx> b_, r_, rhat_, p_, v_, s_, t_, work_;
};

void check_split_operator_preconditions(const Hamiltonian& H);

}  // namespace symw::detail
