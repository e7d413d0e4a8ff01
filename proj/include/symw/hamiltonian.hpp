#pragma once

#include <optional>

#include "symw/grid.hpp"
#include "symw/potentials.hpp"

namespace symw {

// H = sum_mu (i hbar grad_mu + q A(r_mu, t))^2 / 2m + V(r_1..r_N, t).
// A is the same function for every particle; V absorbs any external electric
// potential. In Coulomb gauge the kinetic part expands to
// -hbar^2/2m lap + i hbar q/m A.grad + q^2 A^2 / 2m.
struct Hamiltonian {
  PhysicalConstants constants;
  ScalarPotential scalar = zero_potential();
  std::optional<VectorPotential> vector;

  bool has_vector() const noexcept { return vector.has_value(); }
  bool time_dependent() const noexcept {
    return scalar.time_dependent || (vector && vector->time_dependent);
  }
  // True when exchanging two particles leaves the discrete H unchanged.
  bool exchange_symmetric() const noexcept {
    return scalar.certificate == SymmetryCertificate::ExchangeSymmetric;
  }

  // Throws GaugeNotVerified for a vector potential without a Coulomb certificate.
  void validate() const;
};

}  // namespace symw
