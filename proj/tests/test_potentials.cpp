#include <gtest/gtest.h>

#include <cmath>

#include "symw/error.hpp"
#include "symw/potentials.hpp"
#include "test_support.hpp"

namespace symw {
namespace {

using testing::line_grid;

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::RuntimeFailure;
}

double eval(const ScalarPotential& V, std::vector<double> x, int d = 1, double t = 0.0) { return V(x, d, t); }

TEST(HarmonicTrap, Values) {
  const ScalarPotential V = harmonic_trap(1.0);
  EXPECT_DOUBLE_EQ(eval(V, {1.0, 2.0}), 2.5);
  EXPECT_DOUBLE_EQ(eval(V, {2.0, 1.0}), 2.5);
  EXPECT_EQ(V.certificate, SymmetryCertificate::ExchangeSymmetric);
}

TEST(HarmonicTrap, ScalesWithMassAndFrequency) {
  PhysicalConstants c;
  c.mass = 2.0;
  EXPECT_DOUBLE_EQ(eval(harmonic_trap(3.0, c), {1.0, 0.0}), 0.5 * 2.0 * 9.0);
}

TEST(HarmonicTrap, RejectsNonPositiveFrequency) {
  EXPECT_EQ(code_of([] { harmonic_trap(0.0); }), ErrorCode::NonPositiveFrequency);
  EXPECT_EQ(code_of([] { harmonic_trap(-1.0); }), ErrorCode::NonPositiveFrequency);
}

TEST(Pairwise, GaussianAtCoincidenceEqualsStrength) {
  const ScalarPotential V = pairwise(gaussian_kernel(0.7), 1.25);
  EXPECT_DOUBLE_EQ(eval(V, {0.4, 0.4}), 1.25);
}

TEST(Pairwise, UnsoftenedCoulombIsSingular) {
  EXPECT_EQ(code_of([] { pairwise(soft_coulomb_kernel(0.0), 1.0); }), ErrorCode::SingularKernel);
}

TEST(Pairwise, SwappingArgumentsLeavesValueUnchanged) {
  const ScalarPotential V = pairwise(soft_coulomb_kernel(0.5), 2.0);
  EXPECT_EQ(eval(V, {0.3, -1.1, 2.0}), eval(V, {-1.1, 0.3, 2.0}));
  EXPECT_EQ(eval(V, {0.3, -1.1, 2.0}), eval(V, {2.0, -1.1, 0.3}));
  EXPECT_NEAR(eval(V, {0.0, 1.0}), 2.0 / std::sqrt(1.25), 1e-15);
}

TEST(Pairwise, UsesFullSeparationInHigherDimensions) {
  const ScalarPotential V = pairwise(soft_coulomb_kernel(1.0), 1.0);
  EXPECT_NEAR(eval(V, {0.0, 0.0, 3.0, 4.0}, 2), 1.0 / std::sqrt(26.0), 1e-15);
}

TEST(AsymmetricTrap, Values) {
  const ScalarPotential V = asymmetric_trap(1.0, 2.0);
  EXPECT_DOUBLE_EQ(eval(V, {1.0, 1.0}), 2.5);
  EXPECT_DOUBLE_EQ(eval(V, {1.0, 0.0}), 0.5);
  EXPECT_DOUBLE_EQ(eval(V, {0.0, 1.0}), 2.0);
  EXPECT_EQ(V.certificate, SymmetryCertificate::Asymmetric);
}

TEST(AsymmetricTrap, RejectsEqualFrequencies) {
  EXPECT_EQ(code_of([] { asymmetric_trap(1.5, 1.5); }), ErrorCode::EqualFrequencies);
}

TEST(SumPotential, CombinesValuesAndCertificates) {
  const ScalarPotential s = sum({harmonic_trap(1.0), pairwise(gaussian_kernel(1.0), 1.0)});
  EXPECT_EQ(s.certificate, SymmetryCertificate::ExchangeSymmetric);
  EXPECT_DOUBLE_EQ(eval(s, {0.0, 0.0}), 1.0);
  EXPECT_EQ(sum({harmonic_trap(1.0), asymmetric_trap(1.0, 2.0)}).certificate, SymmetryCertificate::Asymmetric);
}

TEST(UniformVectorPotential, CosineProfileHasZeroDivergence) {
  VectorPotential A = cosine_vector_potential({1.0, 0, 0}, 2.0);
  EXPECT_EQ(A.spatial_profile, SpatialProfile::Uniform);
  EXPECT_EQ(A.gauge_certificate, GaugeCertificate::CoulombVerified);
  EXPECT_DOUBLE_EQ(A.uniform_value(0.5)[0], std::cos(1.0));
  GridSpec g;
  g.axes = {Axis{-8, 8, 64}};
  const GaugeReport r = verify_coulomb_gauge(A, g, 100);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.max_divergence, 0.0);
}

TEST(UniformVectorPotential, ConstantProfileIsCertified) {
  const VectorPotential A = uniform_vector_potential([](double) { return Vec3{1.0, 0, 0}; });
  EXPECT_EQ(A.gauge_certificate, GaugeCertificate::CoulombVerified);
}

TEST(CoulombGauge, DivergenceFreeShearPasses) {
  VectorPotential A = general_vector_potential(
      [](std::span<const double> r, double) { return Vec3{r[0], -r[1], 0.0}; }, "shear");
  GridSpec g;
  g.dims_per_particle = 2;
  g.axes.assign(2, Axis{-4, 4, 16});
  EXPECT_EQ(A.gauge_certificate, GaugeCertificate::Unverified);
  const GaugeReport r = verify_coulomb_gauge(A, g, 200);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.max_divergence, 1e-9);
  EXPECT_EQ(A.gauge_certificate, GaugeCertificate::CoulombVerified);
}

TEST(CoulombGauge, RadialFieldFailsWithDivergenceTwo) {
  VectorPotential A = general_vector_potential(
      [](std::span<const double> r, double) { return Vec3{r[0], r[1], 0.0}; }, "radial");
  GridSpec g;
  g.dims_per_particle = 2;
  g.axes.assign(2, Axis{-4, 4, 16});
  const GaugeReport r = verify_coulomb_gauge(A, g, 50);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.failures, 50u);
  EXPECT_NEAR(r.max_divergence, 2.0, 1e-8);
  EXPECT_EQ(A.gauge_certificate, GaugeCertificate::Unverified);
  EXPECT_EQ(r.witness_point.size(), 2u);
}

TEST(CoulombGauge, SymmetricGaugeMagneticFieldPasses) {
  VectorPotential A = rotational_vector_potential(1.5);
  GridSpec g;
  g.dims_per_particle = 2;
  g.axes.assign(2, Axis{-4, 4, 16});
  EXPECT_TRUE(verify_coulomb_gauge(A, g, 100).passed);
}

TEST(ExchangeSymmetry, HarmonicTrapPasses) {
  ScalarPotential V = harmonic_trap(1.0);
  const SymmetryReport r = verify_exchange_symmetry(V, *line_grid(3, 16), 200);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_LE(r.max_violation, 1e-12);
}

TEST(ExchangeSymmetry, AsymmetricTrapFailsWithWitness) {
  ScalarPotential V = asymmetric_trap(1.0, 2.0);
  const auto g = line_grid(2, 16);
  const SymmetryReport r = verify_exchange_symmetry(V, *g, 200);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.failures, 0u);
  ASSERT_EQ(r.witness.size(), 2u);
  const double direct = eval(V, r.witness);
  const double swapped = eval(V, {r.witness[1], r.witness[0]});
  EXPECT_NEAR(std::abs(direct - swapped), r.max_violation, 1e-12);
  EXPECT_EQ(V.certificate, SymmetryCertificate::Asymmetric);
}

TEST(ExchangeSymmetry, SoftCoulombPasses) {
  ScalarPotential V = pairwise(soft_coulomb_kernel(0.5), 1.0);
  EXPECT_TRUE(verify_exchange_symmetry(V, *line_grid(3, 12, -8, 8, Boundary::Dirichlet, 2), 200).passed);
  EXPECT_EQ(V.certificate, SymmetryCertificate::ExchangeSymmetric);
}

TEST(ExchangeSymmetry, SymmetricBuildersHaveZeroViolations) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ScalarPotential V = sum({harmonic_trap(0.5 + 0.1 * static_cast<double>(seed)),
                             pairwise(gaussian_kernel(1.0), 0.3 * static_cast<double>(seed))});
    const SymmetryReport r = verify_exchange_symmetry(V, *line_grid(3, 10), 50, seed);
    EXPECT_TRUE(r.passed);
    EXPECT_LE(r.max_violation, 1e-12);
  }
}

}  // namespace
}  // namespace symw
