#pragma once

// Quantities tracked along a trajectory to test exchange symmetry: the
// exchange phase field, its weighted gradient integral, the overlap
// S = <psi | P_ij psi>, sector weights, the continuity-equation residual and
// the exchange sign.

#include <cstdint>
#include <string>
#include <vector>

#include "symw/diagnostics_record.hpp"
#include "symw/grid.hpp"
#include "symw/hamiltonian.hpp"
#include "symw/propagator.hpp"

namespace symw {

inline constexpr double kDefaultMaskEps = 1e-6;

struct PhaseField {
  GridHandle grid;
  int i = 0;
  int j = 1;
  std::vector<double> values;       // radians in (-pi, pi]; 0 where masked
  std::vector<std::uint8_t> mask;   // 1 where the phase is defined
  std::size_t unmasked = 0;

  double masked_fraction() const noexcept {
    return values.empty() ? 1.0 : 1.0 - static_cast<double>(unmasked) / static_cast<double>(values.size());
  }
};

// phi = arg(P_ij psi / psi) wherever both |psi| and |P_ij psi| reach
// mask_eps * max|psi|. Throws EmptyMask.
PhaseField phase_field(const WaveFunction& psi, int i, int j, double mask_eps = kDefaultMaskEps);

// Quadrature of |psi|^2 sum_l |grad_l phi|^2 over unmasked points. Neighbour
// differences are wrapped into (-pi, pi] before dividing by the spacing;
// one-sided differences are used next to masked points.
double phase_gradient_integral(const WaveFunction& psi, const PhaseField& field);

// S = <psi | P_ij psi>
cplx overlap_S(const WaveFunction& psi, int i = 0, int j = 1);

struct SectorWeights {
  double sym = 0.0;
  double anti = 0.0;
};

// Squared norms of the projections onto the totally symmetric and totally
// antisymmetric sectors. Needs N = 2 or 3; throws UnsupportedParticleCount.
SectorWeights sector_weights(const WaveFunction& psi);

// L1 norm of d|psi|^2/dt - (i hbar/2m) sum_l div_l(psi* grad_l psi - psi grad_l psi*)
// - (q/m) sum_mu A_mu . grad_mu |psi|^2 between two snapshots dt apart,
// centred at t + dt/2 with central differences in space. Dirichlet grids skip
// the two outermost layers where the stencil does not fit.
double continuity_residual(const WaveFunction& previous, const WaveFunction& next, const Hamiltonian& H, double t,
                           double dt, bool include_vector_term = true);

enum class ExchangeSign : int { Antisymmetric = -1, Indeterminate = 0, Symmetric = 1 };

// +1 if ||P psi - psi|| <= tol ||psi||, -1 if ||P psi + psi|| <= tol ||psi||.
ExchangeSign exchange_sign(const WaveFunction& psi, int i, int j, double tol);

struct PersistenceViolation {
  enum class Kind { SignChanged, OverlapDrift };
  Kind kind;
  double t;
  std::string detail;
};

struct PersistenceReport {
  int initial_sign = 0;
  cplx initial_S{};
  double max_overlap_drift = 0.0;
  std::size_t records_checked = 0;
  // At most one entry per kind: the first occurrence.
  std::vector<PersistenceViolation> violations;

  bool persistent() const noexcept { return violations.empty(); }
  // Earliest violation time, or a negative value when persistent.
  double first_violation_time() const noexcept;
};

// Throws EmptyTrajectory.
PersistenceReport sign_persistence(const Trajectory& trajectory, double tol);

struct DiagnosticsOptions {
  int i = 0;
  int j = 1;
  double mask_eps = kDefaultMaskEps;
  double sign_tol = 1e-6;
  bool sectors = true;
  bool phase = true;
  bool continuity = true;
};

Recorder make_recorder(const Hamiltonian& H, const DiagnosticsOptions& options = {});

// Frozen column order for CSV export.
std::string csv_header();
std::string csv_row(const DiagnosticsRecord& record);

}  // namespace symw
