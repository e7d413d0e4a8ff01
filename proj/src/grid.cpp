#include "symw/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "symw/error.hpp"

namespace symw {

void PhysicalConstants::validate() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) raise(ErrorCode::ConfigInvalid, "hbar must be positive");
  if (!(mass > 0.0) || !std::isfinite(mass)) raise(ErrorCode::ConfigInvalid, "mass must be positive");
  if (!std::isfinite(charge)) raise(ErrorCode::ConfigInvalid, "charge must be finite");
}

std::size_t GridSpec::total_points() const noexcept {
  std::size_t total = 1;
  for (int p = 0; p < num_particles; ++p) {
    for (const Axis& axis : axes) {
      if (axis.points != 0 && total > std::numeric_limits<std::size_t>::max() / axis.points)
        return std::numeric_limits<std::size_t>::max();
      total *= axis.points;
    }
  }
  return total;
}

std::size_t default_memory_budget() {
  if (const char* env = std::getenv("SYMW_MEMORY_BUDGET")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return kDefaultMemoryBudget;
}

Grid::Grid(GridSpec spec) : spec_(std::move(spec)) {
  const int d = dims();
  const int r = rank();
  size_ = spec_.total_points();
  cell_count_ = 1;
  for (const Axis& axis : spec_.axes) cell_count_ *= axis.points;

  spacing_.resize(d);
  coords_.resize(d);
  wavenumbers_.resize(d);
  for (int k = 0; k < d; ++k) {
    const Axis& axis = spec_.axes[k];
    const std::size_t m = axis.points;
    const double length = axis.max - axis.min;
    const double h = spec_.boundary == Boundary::Periodic ? length / static_cast<double>(m)
                                                          : length / static_cast<double>(m - 1);
    spacing_[k] = h;
    coords_[k].resize(m);
    wavenumbers_[k].resize(m);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(m) * h);
    for (std::size_t n = 0; n < m; ++n) {
      coords_[k][n] = axis.min + static_cast<double>(n) * h;
      const auto signed_n = n < (m + 1) / 2 ? static_cast<double>(n)
                                            : static_cast<double>(n) - static_cast<double>(m);
      wavenumbers_[k][n] = signed_n * dk;
    }
  }

  strides_.assign(r, 1);
  for (int a = r - 2; a >= 0; --a) strides_[a] = strides_[a + 1] * points(a + 1);
  particle_strides_.resize(spec_.num_particles);
  for (int p = 0; p < spec_.num_particles; ++p) particle_strides_[p] = strides_[p * d + d - 1];

  volume_element_ = 1.0;
  for (int a = 0; a < r; ++a) volume_element_ *= spacing(a);

  std::size_t min_points = std::numeric_limits<std::size_t>::max();
  for (const Axis& axis : spec_.axes) min_points = std::min<std::size_t>(min_points, axis.points);
  // The outermost layer is pinned to zero on Dirichlet grids, so the slab always
  // reaches one layer further in.
  slab_width_ = std::max<std::size_t>(2, min_points / 16);

  for (std::size_t idx = 0; idx < size_; ++idx) {
    bool boundary = false;
    bool slab = false;
    for (int a = 0; a < r; ++a) {
      const std::size_t m = points(a);
      const std::size_t g = digit(idx, a);
      if (g == 0 || g + 1 == m) boundary = true;
      if (g < slab_width_ || g + slab_width_ >= m) slab = true;
    }
    if (boundary) boundary_indices_.push_back(idx);
    if (slab) slab_indices_.push_back(idx);
  }
}

void Grid::point(std::size_t index, std::span<double> out) const noexcept {
  for (int a = 0; a < rank(); ++a) out[a] = coords_[a % dims()][digit(index, a)];
}

void Grid::cell_point(std::size_t cell, std::span<double> out) const noexcept {
  for (int k = dims() - 1; k >= 0; --k) {
    const std::size_t m = spec_.axes[k].points;
    out[k] = coords_[k][cell % m];
    cell /= m;
  }
}

GridHandle build_grid(const GridSpec& spec, std::size_t budget) {
  if (spec.num_particles < 1) raise(ErrorCode::InvalidGrid, "num_particles must be >= 1");
  if (spec.dims_per_particle < 1 || spec.dims_per_particle > 3)
    raise(ErrorCode::InvalidGrid, "dims_per_particle must be 1, 2 or 3");
  if (spec.axes.size() != static_cast<std::size_t>(spec.dims_per_particle))
    raise(ErrorCode::InvalidGrid, "expected one axis per spatial dimension");
  for (std::size_t k = 0; k < spec.axes.size(); ++k) {
    const Axis& axis = spec.axes[k];
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max) || !(axis.max > axis.min))
      raise(ErrorCode::InvalidAxis, "axis " + std::to_string(k) + ": max must exceed min");
    if (axis.points < 4) raise(ErrorCode::InvalidAxis, "axis " + std::to_string(k) + ": points must be >= 4");
  }
  const std::size_t total = spec.total_points();
  const std::size_t limit = budget / sizeof(cplx);
  if (total > limit)
    raise(ErrorCode::MemoryBudgetExceeded, std::to_string(total) + " points exceed budget of " +
                                               std::to_string(budget) + " bytes");
  return GridHandle(new Grid(spec));
}

bool same_grid(const Grid& a, const Grid& b) noexcept { return &a == &b || a.spec() == b.spec(); }

namespace {

void require_same_grid(const WaveFunction& a, const WaveFunction& b) {
  if (!same_grid(a.grid(), b.grid())) raise(ErrorCode::GridMismatch, "wavefunctions live on different grids");
}

}  // namespace

WaveFunction::WaveFunction(GridHandle grid) : grid_(std::move(grid)), amps_(grid_->size()) {}

WaveFunction::WaveFunction(GridHandle grid, std::vector<cplx> amplitudes)
    : grid_(std::move(grid)), amps_(std::move(amplitudes)) {
  if (amps_.size() != grid_->size())
    raise(ErrorCode::GridMismatch, "amplitude count " + std::to_string(amps_.size()) + " != grid size " +
                                       std::to_string(grid_->size()));
  for (const cplx& z : amps_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) raise(ErrorCode::NonFinite, "amplitude is not finite");
  if (grid_->boundary() == Boundary::Dirichlet)
    for (std::size_t idx : grid_->boundary_indices()) amps_[idx] = 0.0;
}

WaveFunction WaveFunction::sample(GridHandle grid, const Sampler& f) {
  std::vector<cplx> amps(grid->size());
  std::vector<double> x(grid->rank());
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    grid->point(idx, x);
    amps[idx] = f(x);
  }
  return WaveFunction(std::move(grid), std::move(amps));
}

bool WaveFunction::is_normalized() const { return std::abs(norm(*this) - 1.0) <= 1e-10; }

WaveFunction WaveFunction::normalized() const {
  const double n = norm(*this);
  if (!(n > 0.0)) raise(ErrorCode::NotNormalized, "cannot normalize the zero field");
  std::vector<cplx> amps = amps_;
  kernels::scale(amps, 1.0 / n);
  return WaveFunction(grid_, std::move(amps));
}

WaveFunction operator+(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a, b);
  std::vector<cplx> out(a.amplitudes().begin(), a.amplitudes().end());
  kernels::axpy(1.0, b.amplitudes(), out);
  return WaveFunction(a.grid_handle(), std::move(out));
}

WaveFunction operator-(const WaveFunction& a, const WaveFunction& b) {
  require_same_grid(a, b);
  std::vector<cplx> out(a.amplitudes().begin(), a.amplitudes().end());
  kernels::axpy(-1.0, b.amplitudes(), out);
  return WaveFunction(a.grid_handle(), std::move(out));
}

WaveFunction operator*(cplx s, const WaveFunction& a) {
  std::vector<cplx> out(a.amplitudes().begin(), a.amplitudes().end());
  kernels::scale(out, s);
  return WaveFunction(a.grid_handle(), std::move(out));
}

ExchangeMap::ExchangeMap(GridHandle grid, int i, int j) : grid_(std::move(grid)), i_(i), j_(j) {
  const int n = grid_->num_particles();
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    raise(ErrorCode::IndexOutOfRange, "exchange pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                          ") invalid for " + std::to_string(n) + " particles");
}

std::size_t ExchangeMap::source(std::size_t dest) const noexcept {
  const std::size_t ci = grid_->cell(dest, i_);
  const std::size_t cj = grid_->cell(dest, j_);
  const std::size_t si = grid_->particle_stride(i_);
  const std::size_t sj = grid_->particle_stride(j_);
  return dest - ci * si - cj * sj + cj * si + ci * sj;
}

WaveFunction ExchangeMap::apply(const WaveFunction& psi) const {
  if (!same_grid(psi.grid(), *grid_)) raise(ErrorCode::GridMismatch, "exchange map built for another grid");
  std::vector<cplx> out(psi.size());
  const auto in = psi.amplitudes();
  for (std::size_t idx = 0; idx < out.size(); ++idx) out[idx] = in[source(idx)];
  return WaveFunction(psi.grid_handle(), std::move(out));
}

WaveFunction exchange(const WaveFunction& psi, int i, int j) {
  return ExchangeMap(psi.grid_handle(), i, j).apply(psi);
}

WaveFunction permute(const WaveFunction& psi, std::span<const int> sigma) {
  const Grid& grid = psi.grid();
  const int n = grid.num_particles();
  if (sigma.size() != static_cast<std::size_t>(n))
    raise(ErrorCode::IndexOutOfRange, "permutation length must equal the particle count");
  std::vector<bool> seen(n, false);
  for (int s : sigma) {
    if (s < 0 || s >= n || seen[s]) raise(ErrorCode::IndexOutOfRange, "not a permutation");
    seen[s] = true;
  }
  std::vector<cplx> out(psi.size());
  const auto in = psi.amplitudes();
  std::vector<std::size_t> cells(n);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    for (int p = 0; p < n; ++p) cells[p] = grid.cell(idx, p);
    std::size_t src = 0;
    for (int p = 0; p < n; ++p) src += cells[sigma[p]] * grid.particle_stride(p);
    out[idx] = in[src];
  }
  return WaveFunction(psi.grid_handle(), std::move(out));
}

cplx inner_product(const WaveFunction& phi, const WaveFunction& psi) {
  require_same_grid(phi, psi);
  return kernels::cdot(phi.amplitudes(), psi.amplitudes()) * phi.volume_element();
}

double norm(const WaveFunction& psi) {
  return std::sqrt(kernels::norm2(psi.amplitudes()) * psi.volume_element());
}

double l2_distance(const WaveFunction& a, const WaveFunction& b) { return norm(a - b); }

double boundary_mass(const WaveFunction& psi) {
  const auto amps = psi.amplitudes();
  double mass = 0.0;
  for (std::size_t idx : psi.grid().slab_indices()) mass += std::norm(amps[idx]);
  return mass * psi.volume_element();
}

}  // namespace symw
