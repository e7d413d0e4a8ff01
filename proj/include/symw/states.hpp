#pragma once

// Initial states: single-particle orbitals and the many-particle states built
// from them.

#include <array>
#include <cstdint>
#include <vector>

#include "symw/grid.hpp"
#include "symw/potentials.hpp"

namespace symw {

// Single-particle orbital in up to 3 dimensions, normalized on the real line
// (or space). Only the first `dims` components of an argument are read.
class Orbital {
 public:
  enum class Kind { HarmonicOscillator, Gaussian };

  // Product of Hermite functions with quantum numbers n, for the trap
  // V = m omega^2 |r|^2 / 2. Throws NonPositiveFrequency.
  static Orbital harmonic(std::array<int, 3> n, double omega = 1.0, const PhysicalConstants& c = {});
  static Orbital harmonic(int n, double omega = 1.0, const PhysicalConstants& c = {});
  // (2 pi sigma^2)^(-d/4) exp(-|r - center|^2 / 4 sigma^2 + i p.r / hbar);
  // sigma is the position standard deviation.
  static Orbital gaussian(Vec3 center, double sigma, Vec3 momentum = {}, const PhysicalConstants& c = {});

  Kind kind() const noexcept { return kind_; }
  cplx operator()(std::span<const double> r, int dims) const;

 private:
  Kind kind_ = Kind::Gaussian;
  std::array<int, 3> n_{};
  double alpha_ = 1.0;  // sqrt(m omega / hbar)
  Vec3 center_{};
  double sigma_ = 1.0;
  Vec3 k_{};  // momentum / hbar
};

// Normalized Hermite function psi_n(xi) by the stable three-term recurrence.
double hermite_function(int n, double xi);

// psi(r_0..r_{N-1}) = prod_k orbitals[k](r_k). Needs one orbital per particle.
WaveFunction product_state(GridHandle grid, const std::vector<Orbital>& orbitals);
// (1/sqrt(N!)) sum_sigma sgn(sigma) prod_k orbitals[sigma(k)](r_k)
WaveFunction slater_state(GridHandle grid, const std::vector<Orbital>& orbitals);
// (1/sqrt(N!)) sum_sigma prod_k orbitals[sigma(k)](r_k); unit norm only for
// distinct orthonormal orbitals.
WaveFunction symmetrized_product_state(GridHandle grid, const std::vector<Orbital>& orbitals);

// Gaussian packet over the whole configuration space. center, sigma and
// momentum hold one entry per configuration axis (N*d), or a single entry
// broadcast to all axes.
WaveFunction gaussian_packet(GridHandle grid, const std::vector<double>& center, const std::vector<double>& sigma,
                             const std::vector<double>& momentum, const PhysicalConstants& c = {});

// Independent complex normal amplitudes, normalized on the grid. Deterministic
// for a given seed.
WaveFunction random_state(GridHandle grid, std::uint64_t seed);

}  // namespace symw
