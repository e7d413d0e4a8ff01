#pragma once

// Configuration-space grid and the wavefunction stored on it.
//
// A grid for N particles in d dimensions has rank N*d. Configuration axis a
// belongs to particle a / d and spatial dimension a % d; every particle shares
// the same per-dimension axes so that swapping two particles is a bijection
// of grid indices. Storage is row-major with particle 0's axes slowest.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "symw/kernels.hpp"

namespace symw {

struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;
  double charge = 1.0;

  void validate() const;
};

enum class Boundary : std::uint8_t { Dirichlet = 0, Periodic = 1 };

struct Axis {
  double min = -8.0;
  double max = 8.0;
  std::uint32_t points = 64;

  bool operator==(const Axis&) const = default;
};

struct GridSpec {
  int num_particles = 2;
  int dims_per_particle = 1;
  std::vector<Axis> axes;  // one per spatial dimension
  Boundary boundary = Boundary::Dirichlet;

  // Saturates at SIZE_MAX instead of overflowing.
  std::size_t total_points() const noexcept;

  bool operator==(const GridSpec&) const = default;
};

// 2^27 complex128 values.
inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{1} << 31;

// kDefaultMemoryBudget unless SYMW_MEMORY_BUDGET holds a positive byte count.
std::size_t default_memory_budget();

class Grid {
 public:
  const GridSpec& spec() const noexcept { return spec_; }
  int num_particles() const noexcept { return spec_.num_particles; }
  int dims() const noexcept { return spec_.dims_per_particle; }
  int rank() const noexcept { return spec_.num_particles * spec_.dims_per_particle; }
  Boundary boundary() const noexcept { return spec_.boundary; }
  std::size_t size() const noexcept { return size_; }
  // Number of single-particle cells, the product of the per-dimension points.
  std::size_t cell_count() const noexcept { return cell_count_; }

  std::size_t points(int axis) const noexcept { return spec_.axes[axis % dims()].points; }
  double spacing(int axis) const noexcept { return spacing_[axis % dims()]; }
  std::size_t stride(int axis) const noexcept { return strides_[axis]; }
  std::span<const double> coordinates(int axis) const noexcept { return coords_[axis % dims()]; }
  std::span<const double> wavenumbers(int axis) const noexcept { return wavenumbers_[axis % dims()]; }
  std::size_t particle_stride(int particle) const noexcept { return particle_strides_[particle]; }

  std::size_t digit(std::size_t index, int axis) const noexcept {
    return (index / strides_[axis]) % points(axis);
  }
  std::size_t cell(std::size_t index, int particle) const noexcept {
    return (index / particle_strides_[particle]) % cell_count_;
  }
  // Writes the N*d coordinates of a configuration point.
  void point(std::size_t index, std::span<double> out) const noexcept;
  // Writes the d coordinates of a single-particle cell.
  void cell_point(std::size_t cell, std::span<double> out) const noexcept;

  // Product of the axis spacings over all N*d axes (midpoint quadrature weight).
  double volume_element() const noexcept { return volume_element_; }

  // Points with any digit on the first or last index of its axis.
  std::span<const std::size_t> boundary_indices() const noexcept { return boundary_indices_; }
  // Points within slab_width() of any face; superset of boundary_indices().
  std::span<const std::size_t> slab_indices() const noexcept { return slab_indices_; }
  std::size_t slab_width() const noexcept { return slab_width_; }

  friend std::shared_ptr<const Grid> build_grid(const GridSpec& spec, std::size_t budget);

 private:
  explicit Grid(GridSpec spec);

  GridSpec spec_;
  std::size_t size_ = 0;
  std::size_t cell_count_ = 0;
  std::size_t slab_width_ = 1;
  double volume_element_ = 1.0;
  std::vector<double> spacing_;
  std::vector<std::vector<double>> coords_;
  std::vector<std::vector<double>> wavenumbers_;
  std::vector<std::size_t> strides_;
  std::vector<std::size_t> particle_strides_;
  std::vector<std::size_t> boundary_indices_;
  std::vector<std::size_t> slab_indices_;
};

using GridHandle = std::shared_ptr<const Grid>;

// Validates the GridSpec and precomputes coordinates and FFT wavenumbers.
// Throws InvalidGrid, InvalidAxis or MemoryBudgetExceeded.
GridHandle build_grid(const GridSpec& spec, std::size_t budget = default_memory_budget());

bool same_grid(const Grid& a, const Grid& b) noexcept;

class WaveFunction {
 public:
  using Sampler = std::function<cplx(std::span<const double>)>;

  explicit WaveFunction(GridHandle grid);
  // Throws GridMismatch on a size mismatch and NonFinite on NaN/Inf. On a
  // Dirichlet grid the boundary points are set to zero.
  WaveFunction(GridHandle grid, std::vector<cplx> amplitudes);

  static WaveFunction sample(GridHandle grid, const Sampler& f);

  const Grid& grid() const noexcept { return *grid_; }
  const GridHandle& grid_handle() const noexcept { return grid_; }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::size_t size() const noexcept { return amps_.size(); }
  cplx operator[](std::size_t index) const noexcept { return amps_[index]; }
  double volume_element() const noexcept { return grid_->volume_element(); }

  // |norm - 1| <= 1e-10
  bool is_normalized() const;
  WaveFunction normalized() const;

  std::vector<cplx> release() && { return std::move(amps_); }

 private:
  GridHandle grid_;
  std::vector<cplx> amps_;
};

WaveFunction operator+(const WaveFunction& a, const WaveFunction& b);
WaveFunction operator-(const WaveFunction& a, const WaveFunction& b);
WaveFunction operator*(cplx s, const WaveFunction& a);

// Value-level exchange operator P_ij: the amplitude at (.., r_i, .., r_j, ..)
// moves to (.., r_j, .., r_i, ..).
class ExchangeMap {
 public:
  ExchangeMap(GridHandle grid, int i, int j);

  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }
  // Index whose amplitude lands on `dest` under the exchange.
  std::size_t source(std::size_t dest) const noexcept;
  WaveFunction apply(const WaveFunction& psi) const;

 private:
  GridHandle grid_;
  int i_;
  int j_;
};

// (P_sigma psi)(r_0, .., r_{N-1}) = psi(r_sigma(0), .., r_sigma(N-1)).
WaveFunction permute(const WaveFunction& psi, std::span<const int> sigma);
WaveFunction exchange(const WaveFunction& psi, int i, int j);

// Midpoint quadrature sum conj(phi) * psi * dV.
cplx inner_product(const WaveFunction& phi, const WaveFunction& psi);
double norm(const WaveFunction& psi);
double l2_distance(const WaveFunction& a, const WaveFunction& b);
// Probability carried by the boundary slab points.
double boundary_mass(const WaveFunction& psi);

}  // namespace symw
