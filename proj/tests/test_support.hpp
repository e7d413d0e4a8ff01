#pragma once

#include <random>

#include "symw/grid.hpp"
#include "symw/hamiltonian.hpp"
#include "symw/potentials.hpp"
#include "symw/states.hpp"

namespace symw::testing {

inline GridHandle line_grid(int particles, std::uint32_t points, double lo = -8.0, double hi = 8.0,
                            Boundary boundary = Boundary::Dirichlet, int dims = 1) {
  GridSpec s;
  s.num_particles = particles;
  s.dims_per_particle = dims;
  s.axes.assign(dims, Axis{lo, hi, points});
  s.boundary = boundary;
  return build_grid(s);
}

inline Hamiltonian interacting_harmonic() {
  Hamiltonian H;
  H.scalar = sum({harmonic_trap(1.0), pairwise(soft_coulomb_kernel(1.0), 1.0)});
  return H;
}

inline WaveFunction fermion_pair(const GridHandle& g) {
  return slater_state(g, {Orbital::harmonic(0), Orbital::harmonic(1)}).normalized();
}

inline WaveFunction boson_pair(const GridHandle& g) {
  return symmetrized_product_state(g, {Orbital::harmonic(0), Orbital::harmonic(1)}).normalized();
}

// Smooth random state: random complex combination of low harmonic orbitals
// products, so it stays well inside a [-8, 8] box.
inline WaveFunction smooth_random_state(const GridHandle& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  WaveFunction psi(g);
  const int particles = g->num_particles();
  for (int term = 0; term < 4; ++term) {
    std::vector<Orbital> orbitals;
    for (int p = 0; p < particles; ++p) {
      std::uniform_int_distribution<int> q(0, 3);
      orbitals.push_back(Orbital::harmonic({q(rng), q(rng), q(rng)}));
    }
    psi = psi + cplx(n(rng), n(rng)) * product_state(g, orbitals);
  }
  return psi.normalized();
}

}  // namespace symw::testing
