#include "symw/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "symw/error.hpp"
#include "symw/symmetry.hpp"

namespace symw {
namespace {

constexpr double kPi = std::numbers::pi;

// Maps an angle difference into (-pi, pi].
double wrap(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

void require_pair(const Grid& g, int i, int j) {
  const int n = g.num_particles();
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    raise(ErrorCode::IndexOutOfRange, "particle pair out of range");
}

// Neighbour index along an axis at offset +1 or -1, or SIZE_MAX past a
// Dirichlet edge.
struct Neighbours {
  const Grid& g;
  bool periodic;

  std::size_t step(std::size_t idx, int axis, int dir) const {
    const std::size_t m = g.points(axis);
    const std::size_t s = g.stride(axis);
    const std::size_t k = g.digit(idx, axis);
    if (dir > 0) {
      if (k + 1 < m) return idx + s;
      return periodic ? idx - (m - 1) * s : SIZE_MAX;
    }
    if (k > 0) return idx - s;
    return periodic ? idx + (m - 1) * s : SIZE_MAX;
  }
};

}  // namespace

PhaseField phase_field(const WaveFunction& psi, int i, int j, double mask_eps) {
  const Grid& g = psi.grid();
  require_pair(g, i, j);
  if (!(mask_eps > 0.0)) raise(ErrorCode::EmptyMask, "mask_eps must be positive");
  const WaveFunction swapped = exchange(psi, i, j);

  double peak = 0.0;
  for (const cplx& z : psi.amplitudes()) peak = std::max(peak, std::abs(z));
  const double threshold = mask_eps * peak;

  PhaseField f;
  f.grid = psi.grid_handle();
  f.i = i;
  f.j = j;
  f.values.assign(psi.size(), 0.0);
  f.mask.assign(psi.size(), 0);
  if (peak == 0.0) raise(ErrorCode::EmptyMask, "wavefunction is identically zero");

  for (std::size_t n = 0; n < psi.size(); ++n) {
    const cplx a = swapped[n];
    const cplx b = psi[n];
    if (std::abs(b) < threshold || std::abs(a) < threshold) continue;
    // a * conj(b) written out so the sign of a zero imaginary part is fixed.
    const double re = a.real() * b.real() + a.imag() * b.imag();
    const double im = a.imag() * b.real() - a.real() * b.imag();
    double phi = std::atan2(im, re);
    if (phi <= -kPi) phi = kPi;
    f.values[n] = phi;
    f.mask[n] = 1;
    ++f.unmasked;
  }
  if (f.unmasked == 0) raise(ErrorCode::EmptyMask, "no point passes the phase mask");
  return f;
}

double phase_gradient_integral(const WaveFunction& psi, const PhaseField& field) {
  const Grid& g = psi.grid();
  if (!field.grid || !same_grid(g, *field.grid) || field.values.size() != psi.size())
    raise(ErrorCode::GridMismatch, "phase field belongs to a different grid");
  if (field.unmasked == 0) raise(ErrorCode::EmptyMask, "phase field has no unmasked points");

  const Neighbours nb{g, g.boundary() == Boundary::Periodic};
  const auto ok = [&](std::size_t k) { return k != SIZE_MAX && field.mask[k] != 0; };
  double total = 0.0;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    if (!field.mask[n]) continue;
    double grad2 = 0.0;
    for (int a = 0; a < g.rank(); ++a) {
      const std::size_t up = nb.step(n, a, +1);
      const std::size_t dn = nb.step(n, a, -1);
      const double h = g.spacing(a);
      double d = 0.0;
      if (ok(up) && ok(dn))
        d = wrap(field.values[up] - field.values[dn]) / (2.0 * h);
      else if (ok(up))
        d = wrap(field.values[up] - field.values[n]) / h;
      else if (ok(dn))
        d = wrap(field.values[n] - field.values[dn]) / h;
      grad2 += d * d;
    }
    total += std::norm(psi[n]) * grad2;
  }
  return total * g.volume_element();
}

cplx overlap_S(const WaveFunction& psi, int i, int j) {
  require_pair(psi.grid(), i, j);
  return inner_product(psi, exchange(psi, i, j));
}

SectorWeights sector_weights(const WaveFunction& psi) {
  const int n = psi.grid().num_particles();
  if (n < 2 || n > 3) raise(ErrorCode::UnsupportedParticleCount, "sector weights need 2 or 3 particles");
  const double s = norm(project_symmetric(psi));
  const double a = norm(project_antisymmetric(psi));
  return {s * s, a * a};
}

double continuity_residual(const WaveFunction& previous, const WaveFunction& next, const Hamiltonian& H, double t,
                           double dt, bool include_vector_term) {
  const Grid& g = previous.grid();
  if (!same_grid(g, next.grid())) raise(ErrorCode::GridMismatch, "snapshots live on different grids");
  if (!(dt > 0.0)) raise(ErrorCode::InvalidScheme, "continuity residual needs dt > 0");

  const std::size_t size = g.size();
  const int rank = g.rank();
  const int d = g.dims();
  const bool periodic = g.boundary() == Boundary::Periodic;
  const Neighbours nb{g, periodic};
  const double hbar_over_m = H.constants.hbar / H.constants.mass;
  const double q_over_m = H.constants.charge / H.constants.mass;
  const double tm = t + 0.5 * dt;

  // A at the midpoint, per single-particle cell.
  const bool vector_term = include_vector_term && H.vector.has_value();
  std::vector<Vec3> cell_A;
  if (vector_term) {
    cell_A.resize(g.cell_count());
    std::vector<double> r(d);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      g.cell_point(c, r);
      cell_A[c] = (*H.vector)(r, tm);
    }
  }

  // Right-hand side of d|psi|^2/dt for one snapshot.
  auto rhs = [&](const WaveFunction& psi, std::vector<double>& out) {
    out.assign(size, 0.0);
    std::vector<double> current(size);
    std::vector<double> rho(size);
    for (std::size_t n = 0; n < size; ++n) rho[n] = std::norm(psi[n]);
    for (int a = 0; a < rank; ++a) {
      const double h = g.spacing(a);
      const int particle = a / d;
      const int dim = a % d;
      for (std::size_t n = 0; n < size; ++n) {
        const std::size_t up = nb.step(n, a, +1);
        const std::size_t dn = nb.step(n, a, -1);
        if (up == SIZE_MAX || dn == SIZE_MAX) {
          current[n] = 0.0;
          continue;
        }
        const cplx grad = (psi[up] - psi[dn]) / (2.0 * h);
        current[n] = std::imag(std::conj(psi[n]) * grad);
      }
      for (std::size_t n = 0; n < size; ++n) {
        const std::size_t up = nb.step(n, a, +1);
        const std::size_t dn = nb.step(n, a, -1);
        if (up == SIZE_MAX || dn == SIZE_MAX) continue;
        out[n] -= hbar_over_m * (current[up] - current[dn]) / (2.0 * h);
        if (vector_term) {
          const double A = cell_A[g.cell(n, particle)][dim];
          out[n] += q_over_m * A * (rho[up] - rho[dn]) / (2.0 * h);
        }
      }
    }
  };

  std::vector<double> rhs_prev, rhs_next;
  rhs(previous, rhs_prev);
  rhs(next, rhs_next);

  double total = 0.0;
  for (std::size_t n = 0; n < size; ++n) {
    if (!periodic) {
      bool interior = true;
      for (int a = 0; a < rank && interior; ++a) {
        const std::size_t k = g.digit(n, a);
        interior = k >= 2 && k + 2 < g.points(a);
      }
      if (!interior) continue;
    }
    const double drho = (std::norm(next[n]) - std::norm(previous[n])) / dt;
    total += std::abs(drho - 0.5 * (rhs_prev[n] + rhs_next[n]));
  }
  return total * g.volume_element();
}

ExchangeSign exchange_sign(const WaveFunction& psi, int i, int j, double tol) {
  require_pair(psi.grid(), i, j);
  const double n = norm(psi);
  if (!(n > 0.0)) return ExchangeSign::Indeterminate;
  const WaveFunction swapped = exchange(psi, i, j);
  if (l2_distance(swapped, psi) <= tol * n) return ExchangeSign::Symmetric;
  if (norm(swapped + psi) <= tol * n) return ExchangeSign::Antisymmetric;
  return ExchangeSign::Indeterminate;
}

double PersistenceReport::first_violation_time() const noexcept {
  double first = -1.0;
  for (const auto& v : violations)
    if (first < 0.0 || v.t < first) first = v.t;
  return first;
}

PersistenceReport sign_persistence(const Trajectory& trajectory, double tol) {
  if (trajectory.records.empty()) raise(ErrorCode::EmptyTrajectory, "trajectory has no records");
  PersistenceReport report;
  const DiagnosticsRecord& first = trajectory.records.front();
  report.initial_sign = first.exchange_sign;
  report.initial_S = first.S;
  bool sign_flagged = false;
  bool drift_flagged = false;
  char buf[160];
  for (const DiagnosticsRecord& r : trajectory.records) {
    ++report.records_checked;
    if (!sign_flagged && r.exchange_sign != report.initial_sign) {
      std::snprintf(buf, sizeof buf, "exchange sign %+d differs from initial %+d", r.exchange_sign,
                    report.initial_sign);
      report.violations.push_back({PersistenceViolation::Kind::SignChanged, r.t, buf});
      sign_flagged = true;
    }
    const double drift = std::abs(r.S - report.initial_S);
    if (std::isnan(drift)) continue;
    report.max_overlap_drift = std::max(report.max_overlap_drift, drift);
    if (!drift_flagged && drift > tol) {
      std::snprintf(buf, sizeof buf, "|S(t) - S(0)| = %.3e exceeds %.3e", drift, tol);
      report.violations.push_back({PersistenceViolation::Kind::OverlapDrift, r.t, buf});
      drift_flagged = true;
    }
  }
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const PersistenceViolation& a, const PersistenceViolation& b) { return a.t < b.t; });
  return report;
}

Recorder make_recorder(const Hamiltonian& H, const DiagnosticsOptions& options) {
  return [H, options](double t, const WaveFunction& psi, const WaveFunction* previous, double dt_previous) {
    DiagnosticsRecord r;
    r.t = t;
    r.norm = norm(psi);
    r.boundary_mass = boundary_mass(psi);
    const int n = psi.grid().num_particles();
    if (n >= 2) {
      r.S = overlap_S(psi, options.i, options.j);
      r.exchange_sign = static_cast<int>(exchange_sign(psi, options.i, options.j, options.sign_tol));
      if (options.phase) {
        try {
          r.phase_grad_integral = phase_gradient_integral(psi, phase_field(psi, options.i, options.j, options.mask_eps));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::EmptyMask) throw;
        }
      }
    }
    if (options.sectors && (n == 2 || n == 3)) {
      const SectorWeights w = sector_weights(psi);
      r.sector_sym = w.sym;
      r.sector_anti = w.anti;
    }
    if (options.continuity && previous && dt_previous > 0.0)
      r.continuity_residual = continuity_residual(*previous, psi, H, t - dt_previous, dt_previous);
    return r;
  };
}

std::string csv_header() {
  return "t,norm,re_S,im_S,sector_sym,sector_anti,phase_grad_integral,continuity_residual,exchange_sign,boundary_mass";
}

std::string csv_row(const DiagnosticsRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%.17g", r.t, r.norm, r.S.real(),
                r.S.imag(), r.sector_sym, r.sector_anti, r.phase_grad_integral, r.continuity_residual,
                r.exchange_sign, r.boundary_mass);
  return buf;
}

}  // namespace symw
