#pragma once

// Time stepping for the configuration-space Schroedinger equation.
//
// Two schemes share one spatial discretization by default: a Strang
// split-operator step that is diagonal in FFT space, and a Crank-Nicolson
// step solved matrix-free with BiCGSTAB. With KineticSymbol::CentralDifference
// the split-operator kinetic factor is the exact Fourier symbol of the
// second-order central-difference operator used by the implicit scheme, so
// both converge in dt to the same semi-discrete solution.

#include <functional>
#include <memory>
#include <vector>

#include "symw/diagnostics_record.hpp"
#include "symw/grid.hpp"
#include "symw/hamiltonian.hpp"

namespace symw {

enum class SchemeKind { SplitOperator, ImplicitFD };

enum class KineticSymbol {
  CentralDifference,  // (2 hbar^2 / m h^2) sin^2(k h / 2), gradient sin(k h) / h
  Spectral,           // hbar^2 k^2 / 2m, gradient k
};

std::string_view to_string(SchemeKind kind) noexcept;
std::string_view to_string(KineticSymbol symbol) noexcept;

struct Scheme {
  SchemeKind kind = SchemeKind::SplitOperator;
  double dt = 1e-3;
  double solver_tol = 1e-12;  // relative residual for ImplicitFD, in (0, 1e-4]
  int max_iters = 500;
  KineticSymbol kinetic = KineticSymbol::CentralDifference;  // SplitOperator only

  void validate() const;
};

// Dirichlet runs may use the split-operator step only while the boundary slab
// carries at most this much probability.
inline constexpr double kBoundaryMassThreshold = 1e-8;

// Advances amplitudes in place; implementations cache FFT plans, phase tables
// and solver workspaces across calls.
class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual void advance(std::vector<cplx>& amplitudes, double t, double dt) = 0;
  // Solver iterations used by the last advance (0 for direct schemes).
  virtual int last_iterations() const noexcept { return 0; }
  virtual double last_residual() const noexcept { return 0.0; }
};

std::unique_ptr<Stepper> make_stepper(GridHandle grid, const Hamiltonian& H, const Scheme& scheme);

// psi(t+dt) = e^{-iV dt/2hbar} F^-1 e^{-iT(k, t+dt/2) dt/hbar} F e^{-iV dt/2hbar} psi
// with V sampled at t + dt/2. Throws BoundaryMassTooLarge and
// NonUniformVectorPotential.
WaveFunction step_split_operator(const WaveFunction& psi, const Hamiltonian& H, double t, double dt,
                                 KineticSymbol kinetic = KineticSymbol::CentralDifference);

struct ImplicitStepInfo {
  int iterations = 0;
  double residual = 0.0;
};

// Solves (1 + i dt H/2hbar) psi' = (1 - i dt H/2hbar) psi with H at t + dt/2.
// Throws SolverDiverged.
WaveFunction step_implicit_fd(const WaveFunction& psi, const Hamiltonian& H, double t, double dt, double tol,
                              int max_iters, ImplicitStepInfo* info = nullptr);

struct Snapshot {
  double t;
  WaveFunction psi;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DiagnosticsRecord> records;
  std::vector<Snapshot> snapshots;
  std::size_t steps = 0;
  int max_solver_iterations = 0;
};

// Builds the record at time t. `previous` is the state one step of length
// `dt_previous` earlier, or null at t = 0.
using Recorder = std::function<DiagnosticsRecord(double t, const WaveFunction& psi, const WaveFunction* previous,
                                                 double dt_previous)>;
using Observer = std::function<void(double t, const WaveFunction& psi)>;

struct EvolveOptions {
  std::size_t record_every = 1;    // steps between records; t = 0 and t_final are always recorded
  std::size_t snapshot_every = 0;  // 0 disables snapshots
  Recorder recorder;               // defaults to a record carrying t and norm
  std::vector<Observer> observers;  // called at every record
};

// Throws NotNormalized for an unnormalized psi0; step failures are rethrown
// with the failing time stamp.
Trajectory evolve(const WaveFunction& psi0, const Hamiltonian& H, const Scheme& scheme, double t_final,
                  const EvolveOptions& options = {});

}  // namespace symw
