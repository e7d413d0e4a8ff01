#pragma once

// Scalar potentials V(r_1..r_N, t), which absorb any single-particle electric
// potential U, and single-particle vector potentials A(r, t) for minimal
// coupling. Certificates record runtime evidence from sampling; they are not
// proofs.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "symw/grid.hpp"

namespace symw {

enum class SymmetryCertificate { ExchangeSymmetric, Asymmetric, Unverified };
enum class GaugeCertificate { CoulombVerified, Unverified };
enum class SpatialProfile { Uniform, General };

std::string_view to_string(SymmetryCertificate c) noexcept;
std::string_view to_string(GaugeCertificate c) noexcept;

using Vec3 = std::array<double, 3>;

struct ScalarPotential {
  // (configuration of N*d coordinates, dims per particle, time) -> energy
  using Evaluator = std::function<double(std::span<const double>, int, double)>;

  Evaluator evaluator;
  SymmetryCertificate certificate = SymmetryCertificate::Unverified;
  bool time_dependent = false;
  std::string description;

  double operator()(std::span<const double> config, int dims, double t) const {
    return evaluator(config, dims, t);
  }
};

struct VectorPotential {
  // (single-particle point of d coordinates, time) -> A; components past d are ignored
  using Evaluator = std::function<Vec3(std::span<const double>, double)>;

  Evaluator evaluator;
  GaugeCertificate gauge_certificate = GaugeCertificate::Unverified;
  SpatialProfile spatial_profile = SpatialProfile::General;
  bool time_dependent = true;
  std::string description;

  Vec3 operator()(std::span<const double> point, double t) const { return evaluator(point, t); }
  // Value of a spatially uniform field; the point argument is irrelevant.
  Vec3 uniform_value(double t) const;
};

ScalarPotential zero_potential();

// V = 1/2 m omega^2 sum_k |r_k|^2. Throws NonPositiveFrequency.
ScalarPotential harmonic_trap(double omega, const PhysicalConstants& constants = {});

using InteractionKernel = std::function<double(double)>;

// exp(-s^2 / (2 width^2)), so kernel(0) = 1.
InteractionKernel gaussian_kernel(double width);
// 1 / sqrt(s^2 + a^2); singular at s = 0 when a = 0.
InteractionKernel soft_coulomb_kernel(double softening);

// V = strength * sum_{k<l} kernel(|r_k - r_l|). Throws SingularKernel when the
// kernel is not finite at zero separation, which every shared-axis grid reaches.
ScalarPotential pairwise(InteractionKernel kernel, double strength, std::string description = "pairwise");

// V = 1/2 m (omega1^2 |r_0|^2 + omega2^2 sum_{k>0} |r_k|^2): particle 0 sits in a
// different trap, breaking exchange symmetry on purpose.
ScalarPotential asymmetric_trap(double omega1, double omega2, const PhysicalConstants& constants = {});

ScalarPotential sum(std::vector<ScalarPotential> terms);

// Spatially uniform A(t); divergence-free identically.
VectorPotential uniform_vector_potential(std::function<Vec3(double)> profile, std::string description = "uniform");
// A(t) = amplitude * cos(omega t)
VectorPotential cosine_vector_potential(const Vec3& amplitude, double omega);
// A = (B/2) (-y, x, 0): a uniform magnetic field along z in symmetric gauge. Needs d >= 2.
VectorPotential rotational_vector_potential(double field);
VectorPotential general_vector_potential(VectorPotential::Evaluator f, std::string description);

struct GaugeReport {
  bool passed = true;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double max_divergence = 0.0;
  std::vector<double> witness_point;
  double witness_time = 0.0;
};

// Fourth-order central-difference divergence at random points of the grid box
// and random times in [0, t_max]; tolerance 1e-8 (1 + |A|). Sets the
// certificate to CoulombVerified iff every sample passes.
GaugeReport verify_coulomb_gauge(VectorPotential& A, const GridSpec& grid, std::size_t samples,
                                 std::uint64_t seed = 1, double t_max = 10.0);

struct SymmetryReport {
  bool passed = true;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double max_violation = 0.0;
  std::vector<double> witness;  // configuration where the worst violation occurred
  int witness_i = -1;
  int witness_j = -1;
};

// Samples random grid configurations (and times, for time-dependent V) and
// every particle pair; tolerance 1e-12 (1 + |V|). Sets the certificate to
// ExchangeSymmetric or Asymmetric.
SymmetryReport verify_exchange_symmetry(ScalarPotential& V, const Grid& grid, std::size_t samples,
                                        std::uint64_t seed = 1, double t_max = 10.0);

}  // namespace symw
