#include "symw/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "symw/error.hpp"

namespace symw {

std::string_view to_string(SymmetryCertificate c) noexcept {
  switch (c) {
    case SymmetryCertificate::ExchangeSymmetric: return "ExchangeSymmetric";
    case SymmetryCertificate::Asymmetric: return "Asymmetric";
    case SymmetryCertificate::Unverified: return "Unverified";
  }
  return "Unverified";
}

std::string_view to_string(GaugeCertificate c) noexcept {
  return c == GaugeCertificate::CoulombVerified ? "CoulombVerified" : "Unverified";
}

Vec3 VectorPotential::uniform_value(double t) const {
  static constexpr std::array<double, 3> origin{0.0, 0.0, 0.0};
  return evaluator(origin, t);
}

ScalarPotential zero_potential() {
  return {[](std::span<const double>, int, double) { return 0.0; }, SymmetryCertificate::ExchangeSymmetric, false,
          "zero"};
}

ScalarPotential harmonic_trap(double omega, const PhysicalConstants& constants) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    raise(ErrorCode::NonPositiveFrequency, "harmonic trap needs omega > 0");
  const double k = 0.5 * constants.mass * omega * omega;
  std::ostringstream desc;
  desc << "harmonic(omega=" << omega << ")";
  return {[k](std::span<const double> x, int, double) {
            double r2 = 0.0;
            for (double xi : x) r2 += xi * xi;
            return k * r2;
          },
          SymmetryCertificate::ExchangeSymmetric, false, desc.str()};
}

InteractionKernel gaussian_kernel(double width) {
  if (!(width > 0.0)) raise(ErrorCode::ConfigInvalid, "gaussian kernel width must be positive");
  const double inv = 1.0 / (2.0 * width * width);
  return [inv](double s) { return std::exp(-s * s * inv); };
}

InteractionKernel soft_coulomb_kernel(double softening) {
  const double a2 = softening * softening;
  return [a2](double s) { return 1.0 / std::sqrt(s * s + a2); };
}

ScalarPotential pairwise(InteractionKernel kernel, double strength, std::string description) {
  if (!std::isfinite(kernel(0.0)))
    raise(ErrorCode::SingularKernel, description + ": kernel is not finite at zero separation");
  return {[kernel = std::move(kernel), strength, description](std::span<const double> x, int d, double) {
            const std::size_t n = x.size() / static_cast<std::size_t>(d);
            double total = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
              for (std::size_t l = k + 1; l < n; ++l) {
                double s2 = 0.0;
                for (int c = 0; c < d; ++c) {
                  const double diff = x[k * d + c] - x[l * d + c];
                  s2 += diff * diff;
                }
                const double value = kernel(std::sqrt(s2));
                if (!std::isfinite(value))
                  raise(ErrorCode::SingularKernel, description + ": kernel not finite at separation " +
                                                       std::to_string(std::sqrt(s2)));
                total += value;
              }
            }
            return strength * total;
          },
          SymmetryCertificate::ExchangeSymmetric, false, std::move(description)};
}

ScalarPotential asymmetric_trap(double omega1, double omega2, const PhysicalConstants& constants) {
  if (!(omega1 > 0.0) || !(omega2 > 0.0))
    raise(ErrorCode::NonPositiveFrequency, "asymmetric trap needs positive frequencies");
  if (omega1 == omega2) raise(ErrorCode::EqualFrequencies, "equal frequencies: use harmonic_trap");
  const double k1 = 0.5 * constants.mass * omega1 * omega1;
  const double k2 = 0.5 * constants.mass * omega2 * omega2;
  std::ostringstream desc;
  desc << "asymmetric(omega1=" << omega1 << ", omega2=" << omega2 << ")";
  return {[k1, k2](std::span<const double> x, int d, double) {
            double first = 0.0, rest = 0.0;
            for (std::size_t c = 0; c < x.size(); ++c) {
              if (c < static_cast<std::size_t>(d))
                first += x[c] * x[c];
              else
                rest += x[c] * x[c];
            }
            return k1 * first + k2 * rest;
          },
          SymmetryCertificate::Asymmetric, false, desc.str()};
}

ScalarPotential sum(std::vector<ScalarPotential> terms) {
  SymmetryCertificate cert = SymmetryCertificate::ExchangeSymmetric;
  bool time_dependent = false;
  std::string desc;
  for (const ScalarPotential& term : terms) {
    if (term.certificate == SymmetryCertificate::Asymmetric)
      cert = SymmetryCertificate::Asymmetric;
    else if (term.certificate == SymmetryCertificate::Unverified && cert != SymmetryCertificate::Asymmetric)
      cert = SymmetryCertificate::Unverified;
    time_dependent = time_dependent || term.time_dependent;
    if (!desc.empty()) desc += " + ";
    desc += term.description;
  }
  if (terms.empty()) return zero_potential();
  return {[terms = std::move(terms)](std::span<const double> x, int d, double t) {
            double total = 0.0;
            for (const ScalarPotential& term : terms) total += term(x, d, t);
            return total;
          },
          cert, time_dependent, desc};
}

VectorPotential uniform_vector_potential(std::function<Vec3(double)> profile, std::string description) {
  return {[profile = std::move(profile)](std::span<const double>, double t) { return profile(t); },
          GaugeCertificate::CoulombVerified, SpatialProfile::Uniform, true, std::move(description)};
}

VectorPotential cosine_vector_potential(const Vec3& amplitude, double omega) {
  std::ostringstream desc;
  desc << "uniform(A0=[" << amplitude[0] << ", " << amplitude[1] << ", " << amplitude[2] << "], omega=" << omega
       << ")";
  VectorPotential A = uniform_vector_potential(
      [amplitude, omega](double t) {
        const double c = std::cos(omega * t);
        return Vec3{amplitude[0] * c, amplitude[1] * c, amplitude[2] * c};
      },
      desc.str());
  A.time_dependent = omega != 0.0;
  return A;
}

VectorPotential rotational_vector_potential(double field) {
  std::ostringstream desc;
  desc << "rotational(B=" << field << ")";
  VectorPotential A = general_vector_potential(
      [field](std::span<const double> r, double) {
        const double x = r.size() > 0 ? r[0] : 0.0;
        const double y = r.size() > 1 ? r[1] : 0.0;
        return Vec3{-0.5 * field * y, 0.5 * field * x, 0.0};
      },
      desc.str());
  A.time_dependent = false;
  return A;
}

VectorPotential general_vector_potential(VectorPotential::Evaluator f, std::string description) {
  return {std::move(f), GaugeCertificate::Unverified, SpatialProfile::General, true, std::move(description)};
}

GaugeReport verify_coulomb_gauge(VectorPotential& A, const GridSpec& grid, std::size_t samples, std::uint64_t seed,
                                 double t_max) {
  GaugeReport report;
  const int d = grid.dims_per_particle;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> point(d), shifted(d);
  for (std::size_t s = 0; s < samples; ++s) {
    for (int c = 0; c < d; ++c) point[c] = grid.axes[c].min + unit(rng) * (grid.axes[c].max - grid.axes[c].min);
    const double t = unit(rng) * t_max;
    const Vec3 a0 = A(point, t);
    double magnitude = 0.0;
    for (int c = 0; c < d; ++c) magnitude += a0[c] * a0[c];
    magnitude = std::sqrt(magnitude);
    double divergence = 0.0;
    for (int c = 0; c < d; ++c) {
      const double h = 1e-3 * std::max(1.0, std::abs(point[c]));
      auto component = [&](double offset) {
        shifted = point;
        shifted[c] += offset;
        return A(shifted, t)[c];
      };
      divergence += (8.0 * (component(h) - component(-h)) - (component(2 * h) - component(-2 * h))) / (12.0 * h);
    }
    ++report.samples;
    const double bad = std::abs(divergence);
    if (!(bad <= 1e-8 * (1.0 + magnitude))) ++report.failures;
    if (bad > report.max_divergence || report.witness_point.empty()) {
      report.max_divergence = bad;
      report.witness_point = point;
      report.witness_time = t;
    }
  }
  report.passed = report.failures == 0;
  A.gauge_certificate = report.passed ? GaugeCertificate::CoulombVerified : GaugeCertificate::Unverified;
  return report;
}

SymmetryReport verify_exchange_symmetry(ScalarPotential& V, const Grid& grid, std::size_t samples,
                                        std::uint64_t seed, double t_max) {
  SymmetryReport report;
  const int n = grid.num_particles();
  const int d = grid.dims();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(grid.rank()), swapped(grid.rank());
  for (std::size_t s = 0; s < samples; ++s) {
    grid.point(pick(rng), x);
    const double t = V.time_dependent ? unit(rng) * t_max : 0.0;
    const double v = V(x, d, t);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        swapped = x;
        for (int c = 0; c < d; ++c) std::swap(swapped[i * d + c], swapped[j * d + c]);
        const double violation = std::abs(v - V(swapped, d, t));
        ++report.samples;
        if (!(violation <= 1e-12 * (1.0 + std::abs(v)))) ++report.failures;
        if (violation > report.max_violation || report.witness.empty()) {
          report.max_violation = std::max(report.max_violation, violation);
          report.witness = x;
          report.witness_i = i;
          report.witness_j = j;
        }
      }
    }
  }
  report.passed = report.failures == 0;
  V.certificate = report.passed ? SymmetryCertificate::ExchangeSymmetric : SymmetryCertificate::Asymmetric;
  return report;
}

}  // namespace symw
