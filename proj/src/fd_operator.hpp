#pragma once

// Matrix-free second-order central-difference Hamiltonian on a configuration
// grid. The A.grad term uses link-averaged field values,
// (A(x) + A(x + h)) / 2 on each link, which keeps the operator Hermitian for
// spatially varying A.

#include <span>
#include <vector>

#include "symw/hamiltonian.hpp"

namespace symw::detail {

class FdOperator {
 public:
  FdOperator(GridHandle grid, const Hamiltonian& H);

  // Samples V and A at time t. Cheap when nothing is time dependent.
  void update(double t);
  // out = H in; boundary rows of a Dirichlet grid are zero.
  void apply(std::span<const cplx> in, std::span<cplx> out) const;

  const Grid& grid() const noexcept { return *grid_; }

 private:
  GridHandle grid_;
  Hamiltonian H_;
  bool initialized_ = false;
  bool uniform_ = true;
  std::vector<double> diagonal_;
  std::vector<double> kappa_;       // hbar^2 / (2 m h^2) per axis
  std::vector<double> grad_coef_;   // hbar q / (2 m h) per axis
  std::vector<double> uniform_link_;              // A_c per axis for uniform fields
  std::vector<std::vector<double>> links_;        // per axis, A on the + link of each point
};

}  // namespace symw::detail
