#include <cmath>
#include <sstream>

#include "steppers.hpp"
#include "symw/error.hpp"

namespace symw {

std::string_view to_string(SchemeKind kind) noexcept {
  return kind == SchemeKind::SplitOperator ? "split_operator" : "implicit_fd";
}

std::string_view to_string(KineticSymbol symbol) noexcept {
  return symbol == KineticSymbol::Spectral ? "spectral" : "central_difference";
}

void Hamiltonian::validate() const {
  constants.validate();
  if (!scalar.evaluator) raise(ErrorCode::ConfigInvalid, "scalar potential has no evaluator");
  if (vector && vector->gauge_certificate != GaugeCertificate::CoulombVerified)
    raise(ErrorCode::GaugeNotVerified, "vector potential '" + vector->description +
                                           "' must pass verify_coulomb_gauge before propagation");
}

void Scheme::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) raise(ErrorCode::InvalidScheme, "dt must be positive");
  if (!(solver_tol > 0.0) || solver_tol > 1e-4) raise(ErrorCode::InvalidScheme, "solver_tol must lie in (0, 1e-4]");
  if (max_iters < 1) raise(ErrorCode::InvalidScheme, "max_iters must be positive");
}

std::unique_ptr<Stepper> make_stepper(GridHandle grid, const Hamiltonian& H, const Scheme& scheme) {
  scheme.validate();
  if (scheme.kind == SchemeKind::SplitOperator)
    return std::make_unique<detail::SplitOperatorStepper>(std::move(grid), H, scheme.kinetic);
  return std::make_unique<detail::ImplicitFdStepper>(std::move(grid), H, scheme.solver_tol, scheme.max_iters);
}

WaveFunction step_split_operator(const WaveFunction& psi, const Hamiltonian& H, double t, double dt,
                                 KineticSymbol kinetic) {
  detail::SplitOperatorStepper stepper(psi.grid_handle(), H, kinetic);
  std::vector<cplx> amps(psi.amplitudes().begin(), psi.amplitudes().end());
  stepper.advance(amps, t, dt);
  return WaveFunction(psi.grid_handle(), std::move(amps));
}

WaveFunction step_implicit_fd(const WaveFunction& psi, const Hamiltonian& H, double t, double dt, double tol,
                              int max_iters, ImplicitStepInfo* info) {
  Scheme{SchemeKind::ImplicitFD, dt > 0.0 ? dt : 1.0, tol, max_iters}.validate();
  detail::ImplicitFdStepper stepper(psi.grid_handle(), H, tol, max_iters);
  std::vector<cplx> amps(psi.amplitudes().begin(), psi.amplitudes().end());
  stepper.advance(amps, t, dt);
  if (info) *info = {stepper.last_iterations(), stepper.last_residual()};
  return WaveFunction(psi.grid_handle(), std::move(amps));
}

Trajectory evolve(const WaveFunction& psi0, const Hamiltonian& H, const Scheme& scheme, double t_final,
                  const EvolveOptions& options) {
  scheme.validate();
  H.validate();
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) raise(ErrorCode::InvalidScheme, "t_final must be >= 0");
  if (!psi0.is_normalized()) raise(ErrorCode::NotNormalized, "initial state must be normalized");

  auto stepper = make_stepper(psi0.grid_handle(), H, scheme);
  const std::size_t record_every = std::max<std::size_t>(1, options.record_every);
  const auto steps = static_cast<std::size_t>(std::max(0.0, std::ceil(t_final / scheme.dt - 1e-9)));
  auto time_at = [&](std::size_t k) { return k == steps ? t_final : static_cast<double>(k) * scheme.dt; };

  Recorder recorder = options.recorder;
  if (!recorder) {
    recorder = [](double t, const WaveFunction& psi, const WaveFunction*, double) {
      DiagnosticsRecord rec;
      rec.t = t;
      rec.norm = norm(psi);
      return rec;
    };
  }

  Trajectory traj;
  traj.steps = steps;
  std::vector<cplx> amps(psi0.amplitudes().begin(), psi0.amplitudes().end());
  std::vector<cplx> previous;

  auto emit = [&](std::size_t k, const std::vector<cplx>* prev, double dt_prev) {
    const double t = time_at(k);
    WaveFunction current(psi0.grid_handle(), amps);
    std::optional<WaveFunction> before;
    if (prev) before.emplace(psi0.grid_handle(), *prev);
    traj.times.push_back(t);
    traj.records.push_back(recorder(t, current, before ? &*before : nullptr, dt_prev));
    for (const Observer& observer : options.observers) observer(t, current);
    if (options.snapshot_every > 0 && (k % options.snapshot_every == 0 || k == steps))
      traj.snapshots.push_back({t, std::move(current)});
  };

  emit(0, nullptr, 0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t0 = time_at(k - 1);
    const double dt = time_at(k) - t0;
    const bool record = k % record_every == 0 || k == steps;
    if (record) previous = amps;
    try {
      stepper->advance(amps, t0, dt);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "step failed at t=" << t0 << ": " << e.message();
      throw Error(e.code(), msg.str());
    }
    traj.max_solver_iterations = std::max(traj.max_solver_iterations, stepper->last_iterations());
    if (record) emit(k, &previous, dt);
  }
  return traj;
}

}  // namespace symw
