#include "fd_operator.hpp"

#include <cmath>

#include "symw/error.hpp"

namespace symw::detail {

FdOperator::FdOperator(GridHandle grid, const Hamiltonian& H) : grid_(std::move(grid)), H_(H) {
  const int r = grid_->rank();
  const double hbar = H_.constants.hbar;
  const double m = H_.constants.mass;
  kappa_.resize(r);
  grad_coef_.resize(r);
  for (int a = 0; a < r; ++a) {
    const double h = grid_->spacing(a);
    kappa_[a] = hbar * hbar / (2.0 * m * h * h);
    grad_coef_[a] = hbar * H_.constants.charge / (2.0 * m * h);
  }
  uniform_ = !H_.vector || H_.vector->spatial_profile == SpatialProfile::Uniform;
  uniform_link_.assign(r, 0.0);
  diagonal_.resize(grid_->size());
}

void FdOperator::update(double t) {
  const Grid& g = *grid_;
  const int r = g.rank();
  const int d = g.dims();
  const int n = g.num_particles();
  const bool refresh_scalar = !initialized_ || H_.scalar.time_dependent;
  const bool refresh_vector = H_.vector && (!initialized_ || H_.vector->time_dependent);
  if (!refresh_scalar && !refresh_vector) return;

  const double q = H_.constants.charge;
  const double m = H_.constants.mass;
  double kinetic_diag = 0.0;
  for (int a = 0; a < r; ++a) kinetic_diag += 2.0 * kappa_[a];

  std::vector<double> a2_cell;  // q^2 |A|^2 / 2m per single-particle cell
  double a2_uniform = 0.0;
  if (H_.vector) {
    if (uniform_) {
      const Vec3 A = H_.vector->uniform_value(t);
      for (int c = 0; c < d; ++c) {
        if (!std::isfinite(A[c])) raise(ErrorCode::NonFinite, "vector potential is not finite");
        a2_uniform += A[c] * A[c];
      }
      a2_uniform *= q * q / (2.0 * m);
      for (int a = 0; a < r; ++a) uniform_link_[a] = A[a % d];
    } else {
      const std::size_t cells = g.cell_count();
      std::vector<double> cell_field(cells * d);
      std::vector<double> pt(d);
      a2_cell.assign(cells, 0.0);
      for (std::size_t c = 0; c < cells; ++c) {
        g.cell_point(c, pt);
        const Vec3 A = (*H_.vector)(pt, t);
        for (int k = 0; k < d; ++k) {
          if (!std::isfinite(A[k])) raise(ErrorCode::NonFinite, "vector potential is not finite");
          cell_field[c * d + k] = A[k];
          a2_cell[c] += A[k] * A[k];
        }
        a2_cell[c] *= q * q / (2.0 * m);
      }
      // cell stride of spatial dimension k inside one particle's cell index
      std::vector<std::size_t> cell_stride(d, 1);
      for (int k = d - 2; k >= 0; --k) cell_stride[k] = cell_stride[k + 1] * g.points(k + 1);
      links_.assign(r, std::vector<double>(g.size()));
      for (int a = 0; a < r; ++a) {
        const int mu = a / d;
        const int k = a % d;
        const std::size_t mpts = g.points(a);
        for (std::size_t idx = 0; idx < g.size(); ++idx) {
          const std::size_t cell = g.cell(idx, mu);
          const std::size_t digit = g.digit(idx, a);
          const std::size_t next_digit = digit + 1 == mpts ? 0 : digit + 1;
          const std::size_t next_cell = cell + (next_digit - digit) * cell_stride[k];
          links_[a][idx] = 0.5 * (cell_field[cell * d + k] + cell_field[next_cell * d + k]);
        }
      }
    }
  }

  std::vector<double> x(r);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    g.point(idx, x);
    const double v = H_.scalar(x, d, t);
    if (!std::isfinite(v)) raise(ErrorCode::NonFinite, "scalar potential is not finite");
    double a2 = n * a2_uniform;
    if (!a2_cell.empty())
      for (int mu = 0; mu < n; ++mu) a2 += a2_cell[g.cell(idx, mu)];
    diagonal_[idx] = v + a2 + kinetic_diag;
  }
  initialized_ = true;
}

void FdOperator::apply(std::span<const cplx> in, std::span<cplx> out) const {
  const Grid& g = *grid_;
  const std::size_t size = g.size();
  const bool periodic = g.boundary() == Boundary::Periodic;
  const bool coupled = H_.vector.has_value();
  for (std::size_t idx = 0; idx < size; ++idx) out[idx] = diagonal_[idx] * in[idx];

  for (int a = 0; a < g.rank(); ++a) {
    const std::size_t s = g.stride(a);
    const std::size_t mpts = g.points(a);
    const std::size_t block = mpts * s;
    const double kappa = kappa_[a];
    const double gc = grad_coef_[a];
    const std::vector<double>* link = (coupled && !uniform_) ? &links_[a] : nullptr;
    const double ul = uniform_link_[a];
    for (std::size_t base = 0; base < size; base += block) {
      for (std::size_t m = 0; m < mpts; ++m) {
        if (!periodic && (m == 0 || m + 1 == mpts)) continue;
        const std::size_t mp = m + 1 == mpts ? 0 : m + 1;
        const std::size_t mm = m == 0 ? mpts - 1 : m - 1;
        const std::size_t row = base + m * s;
        const std::size_t up = base + mp * s;
        const std::size_t down = base + mm * s;
        if (!coupled) {
          for (std::size_t k = 0; k < s; ++k) out[row + k] -= kappa * (in[up + k] + in[down + k]);
        } else if (!link) {
          const cplx cu(-kappa, gc * ul);
          const cplx cd(-kappa, -gc * ul);
          for (std::size_t k = 0; k < s; ++k) out[row + k] += cu * in[up + k] + cd * in[down + k];
        } else {
          for (std::size_t k = 0; k < s; ++k) {
            const double lp = (*link)[row + k];
            const double lm = (*link)[down + k];
            out[row + k] += cplx(-kappa, gc * lp) * in[up + k] + cplx(-kappa, -gc * lm) * in[down + k];
          }
        }
      }
    }
  }
  if (!periodic)
    for (std::size_t idx : g.boundary_indices()) out[idx] = 0.0;
}

}  // namespace symw::detail
