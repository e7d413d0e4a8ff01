#pragma once

// Brute-force reference: dense Hamiltonian matrices on tiny grids and exact
// propagation by eigendecomposition.

#include <Eigen/Dense>
#include <vector>

#include "symw/grid.hpp"
#include "symw/hamiltonian.hpp"

namespace symw {

inline constexpr std::size_t kOracleMaxPoints = 4096;

// Central-difference Hamiltonian restricted to the active points: every point
// of a periodic grid, the interior of a Dirichlet grid (boundary values are
// pinned to zero). Built directly from V and A without the matrix-free
// operator, then replaced by (H + H^dagger) / 2.
struct DenseHamiltonian {
  GridHandle grid;
  Eigen::MatrixXcd matrix;
  std::vector<std::size_t> active;  // grid index of each row
  double asymmetry = 0.0;           // max |H - H^dagger| before symmetrization
  bool real = true;                 // imaginary part identically zero

  Eigen::VectorXcd gather(const WaveFunction& psi) const;
  WaveFunction scatter(const Eigen::VectorXcd& v) const;
};

// Throws TooLarge beyond kOracleMaxPoints active points.
DenseHamiltonian dense_hamiltonian(const GridHandle& grid, const Hamiltonian& H, double t);

// e^{-iHt/hbar} for a fixed matrix via its eigendecomposition.
class ExactPropagator {
 public:
  ExactPropagator(DenseHamiltonian H, double hbar);

  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  // Eigenvector k as a wavefunction on the grid.
  WaveFunction eigenstate(Eigen::Index k) const;
  WaveFunction evolve(const WaveFunction& psi0, double t) const;
  const DenseHamiltonian& hamiltonian() const noexcept { return H_; }

 private:
  DenseHamiltonian H_;
  double hbar_;
  Eigen::VectorXd values_;
  Eigen::MatrixXcd vectors_;
};

// Reference evolution to time t. A time-independent H is propagated exactly;
// otherwise H is sampled at the midpoint of each of ceil(t / dt_ref)
// sub-intervals and each piece applied with a truncated Taylor series.
WaveFunction exact_evolve(const WaveFunction& psi0, const Hamiltonian& H, double t, double dt_ref = 0.0);

// Largest eigenvalue of Pi_A Pi_B Pi_A with Pi_A = (1 + P_01)/2 and
// Pi_B = (1 - P_12)/2 on a three-particle grid. Below 1 means alternating
// projections contract to zero. Throws UnsupportedParticleCount or TooLarge.
double projector_product_spectral_radius(const GridHandle& grid);

}  // namespace symw
