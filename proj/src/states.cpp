#include "symw/states.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "symw/error.hpp"
#include "symw/symmetry.hpp"

namespace symw {
namespace {

void require_orbitals(const Grid& g, const std::vector<Orbital>& orbitals) {
  if (orbitals.size() != static_cast<std::size_t>(g.num_particles()))
    raise(ErrorCode::GridMismatch, "need exactly one orbital per particle");
}

// table[k][c] = orbitals[k] at single-particle cell c.
std::vector<std::vector<cplx>> tabulate(const Grid& g, const std::vector<Orbital>& orbitals) {
  std::vector<std::vector<cplx>> table(orbitals.size(), std::vector<cplx>(g.cell_count()));
  std::vector<double> r(g.dims());
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    g.cell_point(c, r);
    for (std::size_t k = 0; k < orbitals.size(); ++k) table[k][c] = orbitals[k](r, g.dims());
  }
  return table;
}

// sum_sigma w(sigma) prod_k orbitals[sigma(k)](r_k) / sqrt(N!)
WaveFunction combine(GridHandle grid, const std::vector<Orbital>& orbitals, bool signed_sum) {
  const Grid& g = *grid;
  require_orbitals(g, orbitals);
  const auto table = tabulate(g, orbitals);
  const auto perms = permutations(g.num_particles());
  const double scale = 1.0 / std::sqrt(static_cast<double>(perms.size()));
  const int n = g.num_particles();
  std::vector<cplx> amps(g.size());
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    cplx sum = 0.0;
    for (const Permutation& p : perms) {
      cplx prod = table[p.sigma[0]][g.cell(idx, 0)];
      for (int k = 1; k < n; ++k) prod *= table[p.sigma[k]][g.cell(idx, k)];
      sum += (signed_sum && p.sign < 0) ? -prod : prod;
    }
    amps[idx] = sum * scale;
  }
  return WaveFunction(std::move(grid), std::move(amps));
}

std::vector<double> broadcast(const std::vector<double>& v, int rank, const char* what) {
  if (v.size() == static_cast<std::size_t>(rank)) return v;
  if (v.size() == 1) return std::vector<double>(rank, v[0]);
  raise(ErrorCode::GridMismatch, std::string(what) + " needs 1 or N*d entries");
}

}  // namespace

double hermite_function(int n, double xi) {
  const double g = std::exp(-0.5 * xi * xi) / std::sqrt(std::sqrt(std::numbers::pi));
  if (n <= 0) return g;
  double prev = g;
  double cur = std::numbers::sqrt2 * xi * g;
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * xi * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Orbital Orbital::harmonic(std::array<int, 3> n, double omega, const PhysicalConstants& c) {
  if (!(omega > 0.0)) raise(ErrorCode::NonPositiveFrequency, "orbital frequency must be positive");
  c.validate();
  for (int k : n)
    if (k < 0) raise(ErrorCode::ConfigInvalid, "harmonic quantum numbers must be non-negative");
  Orbital o;
  o.kind_ = Kind::HarmonicOscillator;
  o.n_ = n;
  o.alpha_ = std::sqrt(c.mass * omega / c.hbar);
  return o;
}

Orbital Orbital::harmonic(int n, double omega, const PhysicalConstants& c) { return harmonic({n, 0, 0}, omega, c); }

Orbital Orbital::gaussian(Vec3 center, double sigma, Vec3 momentum, const PhysicalConstants& c) {
  if (!(sigma > 0.0)) raise(ErrorCode::ConfigInvalid, "gaussian width must be positive");
  c.validate();
  Orbital o;
  o.kind_ = Kind::Gaussian;
  o.center_ = center;
  o.sigma_ = sigma;
  for (int k = 0; k < 3; ++k) o.k_[k] = momentum[k] / c.hbar;
  return o;
}

cplx Orbital::operator()(std::span<const double> r, int dims) const {
  if (kind_ == Kind::HarmonicOscillator) {
    double v = 1.0;
    for (int l = 0; l < dims; ++l) v *= std::sqrt(alpha_) * hermite_function(n_[l], alpha_ * r[l]);
    return v;
  }
  const double norm = std::pow(2.0 * std::numbers::pi * sigma_ * sigma_, -0.25 * dims);
  double e = 0.0;
  double phase = 0.0;
  for (int l = 0; l < dims; ++l) {
    const double dx = r[l] - center_[l];
    e += dx * dx;
    phase += k_[l] * r[l];
  }
  return norm * std::exp(-e / (4.0 * sigma_ * sigma_)) * std::polar(1.0, phase);
}

WaveFunction product_state(GridHandle grid, const std::vector<Orbital>& orbitals) {
  const Grid& g = *grid;
  require_orbitals(g, orbitals);
  const auto table = tabulate(g, orbitals);
  std::vector<cplx> amps(g.size());
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    cplx prod = table[0][g.cell(idx, 0)];
    for (int k = 1; k < g.num_particles(); ++k) prod *= table[k][g.cell(idx, k)];
    amps[idx] = prod;
  }
  return WaveFunction(std::move(grid), std::move(amps));
}

WaveFunction slater_state(GridHandle grid, const std::vector<Orbital>& orbitals) {
  return combine(std::move(grid), orbitals, true);
}

WaveFunction symmetrized_product_state(GridHandle grid, const std::vector<Orbital>& orbitals) {
  return combine(std::move(grid), orbitals, false);
}

WaveFunction gaussian_packet(GridHandle grid, const std::vector<double>& center, const std::vector<double>& sigma,
                             const std::vector<double>& momentum, const PhysicalConstants& c) {
  c.validate();
  const int rank = grid->rank();
  const auto x0 = broadcast(center, rank, "center");
  const auto s = broadcast(sigma, rank, "width");
  const auto p = broadcast(momentum, rank, "momentum");
  double prefactor = 1.0;
  for (int a = 0; a < rank; ++a) {
    if (!(s[a] > 0.0)) raise(ErrorCode::ConfigInvalid, "gaussian width must be positive");
    prefactor *= std::pow(2.0 * std::numbers::pi * s[a] * s[a], -0.25);
  }
  return WaveFunction::sample(grid, [&](std::span<const double> r) {
    double e = 0.0;
    double phase = 0.0;
    for (int a = 0; a < rank; ++a) {
      const double dx = r[a] - x0[a];
      e += dx * dx / (4.0 * s[a] * s[a]);
      phase += p[a] * r[a] / c.hbar;
    }
    return prefactor * std::exp(-e) * std::polar(1.0, phase);
  });
}

WaveFunction random_state(GridHandle grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> amps(grid->size());
  for (cplx& z : amps) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = cplx(re, im);
  }
  return WaveFunction(std::move(grid), std::move(amps)).normalized();
}

}  // namespace symw
