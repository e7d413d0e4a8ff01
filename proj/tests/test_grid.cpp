#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "reference_values.hpp"
#include "symw/checkpoint.hpp"
#include "symw/error.hpp"
#include "symw/grid.hpp"
#include "symw/states.hpp"
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

TEST(BuildGrid, TwoParticleLineHas4096PointsAndSpacing) {
  const auto g = line_grid(2, 64);
  EXPECT_EQ(g->size(), 4096u);
  EXPECT_DOUBLE_EQ(g->spacing(0), 16.0 / 63.0);
  EXPECT_DOUBLE_EQ(g->spacing(1), 16.0 / 63.0);
  EXPECT_DOUBLE_EQ(g->volume_element(), (16.0 / 63.0) * (16.0 / 63.0));
  EXPECT_DOUBLE_EQ(g->coordinates(0).front(), -8.0);
  EXPECT_DOUBLE_EQ(g->coordinates(0).back(), 8.0);
}

TEST(BuildGrid, ThreeParticleLineHas32768Points) { EXPECT_EQ(line_grid(3, 32)->size(), 32768u); }

TEST(BuildGrid, SixDimensionalConfigurationExceedsOneGiB) {
  GridSpec s;
  s.num_particles = 2;
  s.dims_per_particle = 3;
  s.axes.assign(3, Axis{-8, 8, 64});
  EXPECT_EQ(code_of([&] { build_grid(s, std::size_t{1} << 30); }), ErrorCode::MemoryBudgetExceeded);
}

TEST(BuildGrid, RejectsDegenerateAxes) {
  GridSpec s;
  s.axes = {Axis{1.0, 1.0, 16}};
  EXPECT_EQ(code_of([&] { build_grid(s); }), ErrorCode::InvalidAxis);
  s.axes = {Axis{-1.0, 1.0, 3}};
  EXPECT_EQ(code_of([&] { build_grid(s); }), ErrorCode::InvalidAxis);
  s.axes = {Axis{-1.0, 1.0, 8}};
  s.num_particles = 0;
  EXPECT_EQ(code_of([&] { build_grid(s); }), ErrorCode::InvalidGrid);
}

TEST(BuildGrid, PeriodicSpacingAndWavenumbers) {
  const auto g = line_grid(1, 8, -4.0, 4.0, Boundary::Periodic);
  EXPECT_DOUBLE_EQ(g->spacing(0), 1.0);
  const auto k = g->wavenumbers(0);
  const double dk = 2.0 * M_PI / 8.0;
  const double expected[] = {0, 1, 2, 3, -4, -3, -2, -1};
  for (int n = 0; n < 8; ++n) EXPECT_NEAR(k[n], expected[n] * dk, 1e-15);
}

TEST(BuildGrid, EnvironmentOverridesDefaultBudget) {
  ::setenv("SYMW_MEMORY_BUDGET", "1024", 1);
  EXPECT_EQ(default_memory_budget(), 1024u);
  EXPECT_EQ(code_of([] { line_grid(2, 16); }), ErrorCode::MemoryBudgetExceeded);
  ::unsetenv("SYMW_MEMORY_BUDGET");
  EXPECT_EQ(default_memory_budget(), kDefaultMemoryBudget);
}

TEST(WaveFunctionStorage, DirichletBoundaryIsZeroed) {
  const auto g = line_grid(2, 16);
  const WaveFunction psi(g, std::vector<cplx>(g->size(), cplx(1.0, 1.0)));
  for (std::size_t idx : g->boundary_indices()) EXPECT_EQ(psi[idx], cplx(0.0));
}

TEST(WaveFunctionStorage, RejectsNonFiniteAndWrongSize) {
  const auto g = line_grid(1, 8);
  std::vector<cplx> v(8, 1.0);
  v[3] = cplx(std::nan(""), 0.0);
  EXPECT_EQ(code_of([&] { WaveFunction(g, v); }), ErrorCode::NonFinite);
  EXPECT_EQ(code_of([&] { WaveFunction(g, std::vector<cplx>(7)); }), ErrorCode::GridMismatch);
}

TEST(WaveFunctionStorage, NormalizedFlagHonoursTolerance) {
  const auto g = line_grid(2, 32);
  const WaveFunction psi = testing::fermion_pair(g);
  EXPECT_TRUE(psi.is_normalized());
  EXPECT_FALSE((cplx(1.0 + 1e-9) * psi).is_normalized());
}

TEST(Exchange, SymmetricProductIsFixedPoint) {
  const auto g = line_grid(2, 64);
  const Orbital g0 = Orbital::gaussian({0.3, 0, 0}, 1.0);
  const WaveFunction psi = product_state(g, {g0, g0});
  const WaveFunction swapped = exchange(psi, 0, 1);
  for (std::size_t k = 0; k < psi.size(); ++k) EXPECT_EQ(swapped[k], psi[k]);
}

TEST(Exchange, InvolutionIsBitwise) {
  const auto g = line_grid(3, 10);
  const WaveFunction psi = random_state(g, 3);
  for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const WaveFunction back = exchange(exchange(psi, i, j), i, j);
    for (std::size_t k = 0; k < psi.size(); ++k) ASSERT_EQ(back[k], psi[k]);
  }
}

TEST(Exchange, SlaterStateIsNegated) {
  const auto g = line_grid(2, 64);
  const WaveFunction psi = slater_state(g, {Orbital::harmonic(0), Orbital::harmonic(1)});
  const WaveFunction swapped = exchange(psi, 0, 1);
  for (std::size_t k = 0; k < psi.size(); ++k) {
    ASSERT_EQ(swapped[k].real(), -psi[k].real() + 0.0);
    ASSERT_EQ(swapped[k].imag(), -psi[k].imag() + 0.0);
  }
}

TEST(Exchange, MovesAmplitudeBetweenSlots) {
  const auto g = line_grid(2, 5, 0.0, 4.0, Boundary::Periodic);
  const WaveFunction psi = WaveFunction::sample(g, [](std::span<const double> r) { return cplx(r[0], 10.0 * r[1]); });
  const WaveFunction swapped = exchange(psi, 0, 1);
  std::vector<double> r(2);
  for (std::size_t k = 0; k < g->size(); ++k) {
    g->point(k, r);
    EXPECT_EQ(swapped[k], cplx(r[1], 10.0 * r[0]));
  }
}

TEST(Exchange, MultiDimensionalParticlesSwapWholeCells) {
  const auto g = line_grid(2, 4, 0.0, 3.0, Boundary::Periodic, 2);
  const WaveFunction psi = WaveFunction::sample(
      g, [](std::span<const double> r) { return cplx(r[0] + 4 * r[1], 16 * r[2] + 64 * r[3]); });
  const WaveFunction swapped = exchange(psi, 0, 1);
  std::vector<double> r(4);
  for (std::size_t k = 0; k < g->size(); ++k) {
    g->point(k, r);
    EXPECT_EQ(swapped[k], cplx(r[2] + 4 * r[3], 16 * r[0] + 64 * r[1]));
  }
}

TEST(Exchange, RejectsInvalidPairs) {
  const auto g = line_grid(2, 8);
  const WaveFunction psi(g);
  EXPECT_EQ(code_of([&] { exchange(psi, 0, 0); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([&] { exchange(psi, 0, 2); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([&] { exchange(psi, -1, 1); }), ErrorCode::IndexOutOfRange);
}

TEST(InnerProduct, GaussianNormOnEightSigmaBox) {
  const auto g = line_grid(1, 64);
  const WaveFunction psi = product_state(g, {Orbital::gaussian({0, 0, 0}, 1.0)});
  const double n2 = inner_product(psi, psi).real();
  EXPECT_NEAR(n2, 1.0, 1e-8);
  EXPECT_NEAR(n2, reference::kGaussianNormSquaredM64, 1e-14);
}

TEST(InnerProduct, HarmonicGroundAndFirstExcitedAreOrthogonal) {
  const auto g = line_grid(1, 64);
  const WaveFunction g0 = product_state(g, {Orbital::harmonic(0)});
  const WaveFunction g1 = product_state(g, {Orbital::harmonic(1)});
  EXPECT_LE(std::abs(inner_product(g0, g1)), 1e-10);
}

TEST(InnerProduct, ZeroFieldGivesZero) {
  const auto g = line_grid(2, 16);
  EXPECT_EQ(inner_product(WaveFunction(g), random_state(g, 1)), cplx(0.0));
}

TEST(InnerProduct, RejectsDifferentGrids) {
  EXPECT_EQ(code_of([] { inner_product(WaveFunction(line_grid(1, 8)), WaveFunction(line_grid(1, 9))); }),
            ErrorCode::GridMismatch);
}

TEST(Norm, SlaterStateIsNormalized) {
  const auto g = line_grid(2, 64);
  const double n = norm(slater_state(g, {Orbital::harmonic(0), Orbital::harmonic(1)}));
  EXPECT_NEAR(n, 1.0, 1e-8);
  EXPECT_NEAR(n, reference::kSlaterNormM64, 1e-14);
}

TEST(Norm, IsHomogeneousAndZeroForZeroField) {
  const auto g = line_grid(2, 16);
  const WaveFunction psi = random_state(g, 5);
  EXPECT_NEAR(norm(cplx(2.0) * psi), 2.0 * norm(psi), 1e-15);
  EXPECT_EQ(norm(WaveFunction(g)), 0.0);
}

// Properties over random states.

TEST(GridProperties, ExchangePreservesInnerProducts) {
  const auto g = line_grid(3, 8);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const WaveFunction a = random_state(g, 2 * seed), b = random_state(g, 2 * seed + 1);
    const cplx ab = inner_product(a, b);
    const cplx swapped = inner_product(exchange(a, 0, 2), exchange(b, 0, 2));
    EXPECT_LE(std::abs(ab - swapped), 1e-12 * std::max(1.0, std::abs(ab)));
  }
}

TEST(GridProperties, InnerProductIsSesquilinear) {
  const auto g = line_grid(2, 12);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const WaveFunction a = random_state(g, 3 * seed), b = random_state(g, 3 * seed + 1),
                       c = random_state(g, 3 * seed + 2);
    const cplx alpha(0.7, -1.3), beta(-0.2, 0.4);
    const cplx lhs = inner_product(a, alpha * b + beta * c);
    const cplx rhs = alpha * inner_product(a, b) + beta * inner_product(a, c);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
    const cplx lhs2 = inner_product(alpha * a + beta * b, c);
    const cplx rhs2 = std::conj(alpha) * inner_product(a, c) + std::conj(beta) * inner_product(b, c);
    EXPECT_LE(std::abs(lhs2 - rhs2), 1e-12 * std::max(1.0, std::abs(rhs2)));
    EXPECT_LE(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))), 1e-15);
  }
}

TEST(Checkpoint, RoundTripIsBitwise) {
  for (Boundary b : {Boundary::Dirichlet, Boundary::Periodic}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto g = line_grid(2 + static_cast<int>(seed % 2), 6 + static_cast<std::uint32_t>(seed), -3.5, 2.25, b);
      const WaveFunction psi = random_state(g, seed);
      std::stringstream buf;
      write_checkpoint(buf, psi);
      const WaveFunction back = read_checkpoint(buf);
      ASSERT_TRUE(back.grid().spec() == g->spec());
      for (std::size_t k = 0; k < psi.size(); ++k) ASSERT_EQ(back[k], psi[k]);
    }
  }
}

TEST(Checkpoint, HeaderLayout) {
  const auto g = line_grid(2, 4, -1.0, 1.0, Boundary::Periodic);
  std::stringstream buf;
  write_checkpoint(buf, WaveFunction(g));
  const std::string bytes = buf.str();
  ASSERT_EQ(bytes.size(), 5u + 4 + 4 + (8 + 8 + 4) + 1 + 16 * 16);
  EXPECT_EQ(bytes.substr(0, 5), "SYMW1");
  EXPECT_EQ(static_cast<unsigned char>(bytes[5]), 2u);   // N, little-endian
  EXPECT_EQ(static_cast<unsigned char>(bytes[9]), 1u);   // d
  EXPECT_EQ(static_cast<unsigned char>(bytes[29]), 4u);  // points
  EXPECT_EQ(static_cast<unsigned char>(bytes[33]), 1u);  // periodic flag
}

TEST(Checkpoint, RejectsCorruptInput) {
  std::stringstream bad("SYMW0....");
  EXPECT_EQ(code_of([&] { read_checkpoint(bad); }), ErrorCode::IoError);
  const auto g = line_grid(1, 8);
  std::stringstream buf;
  write_checkpoint(buf, random_state(g, 1));
  std::stringstream truncated(buf.str().substr(0, buf.str().size() - 3));
  EXPECT_EQ(code_of([&] { read_checkpoint(truncated); }), ErrorCode::IoError);
}

}  // namespace
}  // namespace symw
