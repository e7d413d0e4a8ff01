#include <cmath>
#include <cstdio>
#include <mutex>

#include "steppers.hpp"
#include "symw/error.hpp"

namespace symw::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Per-axis kinetic energy table T_a(k_n) for the field component A_c.
std::vector<double> axis_kinetic(const Grid& grid, int axis, double A, const PhysicalConstants& c,
                                 KineticSymbol symbol) {
  const auto k = grid.wavenumbers(axis);
  const double h = grid.spacing(axis);
  const double hbar = c.hbar, m = c.mass, q = c.charge;
  std::vector<double> table(k.size());
  for (std::size_t n = 0; n < k.size(); ++n) {
    if (symbol == KineticSymbol::Spectral) {
      const double p = hbar * k[n] - q * A;
      table[n] = p * p / (2.0 * m);
    } else {
      const double half = std::sin(0.5 * k[n] * h);
      table[n] = 2.0 * hbar * hbar / (m * h * h) * half * half - hbar * q / m * A * std::sin(k[n] * h) / h +
                 q * q * A * A / (2.0 * m);
    }
  }
  return table;
}

}  // namespace

FftPlan::FftPlan(const Grid& grid, int direction) {
  std::vector<int> dims(grid.rank());
  for (int a = 0; a < grid.rank(); ++a) dims[a] = static_cast<int>(grid.points(a));
  std::lock_guard lock(planner_mutex());
  auto* scratch = fftw_alloc_complex(grid.size());
  plan_ = fftw_plan_dft(grid.rank(), dims.data(), scratch, scratch, direction, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(scratch);
  if (!plan_) raise(ErrorCode::RuntimeFailure, "FFTW planning failed");
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan_);
}

void FftPlan::execute(cplx* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan_, p, p);
}

void check_split_operator_preconditions(const Hamiltonian& H) {
  if (H.vector && H.vector->spatial_profile != SpatialProfile::Uniform)
    raise(ErrorCode::NonUniformVectorPotential,
          "split-operator stepping needs a spatially uniform vector potential; use ImplicitFD");
}

SplitOperatorStepper::SplitOperatorStepper(GridHandle grid, const Hamiltonian& H, KineticSymbol kinetic)
    : grid_(std::move(grid)),
      H_(H),
      kinetic_(kinetic),
      forward_(*grid_, FFTW_FORWARD),
      backward_(*grid_, FFTW_BACKWARD),
      potential_(grid_->size()),
      potential_phase_(grid_->size()),
      kinetic_phase_(grid_->size()) {
  H_.validate();
  check_split_operator_preconditions(H_);
}

void SplitOperatorStepper::refresh_potential_phase(double t_mid, double dt) {
  const Grid& g = *grid_;
  const bool resample = !potential_sampled_ || H_.scalar.time_dependent;
  if (resample) {
    std::vector<double> x(g.rank());
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      g.point(idx, x);
      potential_[idx] = H_.scalar(x, g.dims(), t_mid);
      if (!std::isfinite(potential_[idx])) raise(ErrorCode::NonFinite, "scalar potential is not finite");
    }
    potential_sampled_ = true;
  }
  if (!resample && dt == potential_dt_) return;
  const double factor = -0.5 * dt / H_.constants.hbar;
  for (std::size_t idx = 0; idx < g.size(); ++idx)
    potential_phase_[idx] = std::polar(1.0, factor * potential_[idx]);
  potential_dt_ = dt;
}

void SplitOperatorStepper::refresh_kinetic_phase(double t_mid, double dt) {
  const bool time_dependent = H_.vector && H_.vector->time_dependent;
  if (!time_dependent && dt == kinetic_dt_) return;
  const Grid& g = *grid_;
  const Vec3 A = H_.vector ? H_.vector->uniform_value(t_mid) : Vec3{0.0, 0.0, 0.0};
  for (int c = 0; c < g.dims(); ++c)
    if (!std::isfinite(A[c])) raise(ErrorCode::NonFinite, "vector potential is not finite");

  // Row-major outer sum of the per-axis tables, axis 0 slowest.
  std::vector<double> energy{0.0};
  for (int a = 0; a < g.rank(); ++a) {
    const std::vector<double> table = axis_kinetic(g, a, A[a % g.dims()], H_.constants, kinetic_);
    std::vector<double> next(energy.size() * table.size());
    for (std::size_t p = 0; p < energy.size(); ++p)
      for (std::size_t n = 0; n < table.size(); ++n) next[p * table.size() + n] = energy[p] + table[n];
    energy = std::move(next);
  }
  const double factor = -dt / H_.constants.hbar;
  const double normalization = 1.0 / static_cast<double>(g.size());
  for (std::size_t idx = 0; idx < g.size(); ++idx) kinetic_phase_[idx] = std::polar(normalization, factor * energy[idx]);
  kinetic_dt_ = dt;
}

void SplitOperatorStepper::advance(std::vector<cplx>& amps, double t, double dt) {
  const Grid& g = *grid_;
  if (g.boundary() == Boundary::Dirichlet) {
    double mass = 0.0;
    for (std::size_t idx : g.slab_indices()) mass += std::norm(amps[idx]);
    mass *= g.volume_element();
    if (mass > kBoundaryMassThreshold)
    {
      char buf[128];
      std::snprintf(buf, sizeof buf, "boundary slab mass %.3e exceeds %.0e; use implicit_fd", mass,
                    kBoundaryMassThreshold);
      raise(ErrorCode::BoundaryMassTooLarge, buf);
    }
  }
  const double t_mid = t + 0.5 * dt;
  refresh_potential_phase(t_mid, dt);
  refresh_kinetic_phase(t_mid, dt);

  kernels::cmul(amps, potential_phase_);
  forward_.execute(amps.data());
  kernels::cmul(amps, kinetic_phase_);
  backward_.execute(amps.data());
  kernels::cmul(amps, potential_phase_);

  if (g.boundary() == Boundary::Dirichlet)
    for (std::size_t idx : g.boundary_indices()) amps[idx] = 0.0;
}

}  // namespace symw::detail
