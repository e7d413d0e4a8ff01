#pragma once

#include <complex>
#include <limits>

namespace symw {

struct DiagnosticsRecord {
  double t = 0.0;
  double norm = std::numeric_limits<double>::quiet_NaN();
  std::complex<double> S{std::numeric_limits<double>::quiet_NaN(), 0.0};
  double sector_sym = std::numeric_limits<double>::quiet_NaN();
  double sector_anti = std::numeric_limits<double>::quiet_NaN();
  double phase_grad_integral = std::numeric_limits<double>::quiet_NaN();
  double continuity_residual = std::numeric_limits<double>::quiet_NaN();
  int exchange_sign = 0;  // +1, -1, or 0 for indeterminate
  double boundary_mass = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace symw
