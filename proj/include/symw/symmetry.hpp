#pragma once

// Permutation-sector projectors and the mixed-symmetry collapse check.

#include <vector>

#include "symw/grid.hpp"

namespace symw {

struct Permutation {
  std::vector<int> sigma;
  int sign = 1;
};

// All n! permutations of {0..n-1} with their parities, identity first.
std::vector<Permutation> permutations(int n);

// (1/N!) sum_sigma P_sigma psi and (1/N!) sum_sigma sgn(sigma) P_sigma psi,
// unnormalized. N <= 3; throws UnsupportedParticleCount.
WaveFunction project_symmetric(const WaveFunction& psi);
WaveFunction project_antisymmetric(const WaveFunction& psi);

struct ProjectionResult {
  WaveFunction psi;
  bool null_projection = false;  // projected norm below 1e-12; psi is the zero field
  double projected_norm = 0.0;
};

// Projection renormalized to unit norm.
ProjectionResult symmetrize(const WaveFunction& psi);
ProjectionResult antisymmetrize(const WaveFunction& psi);

// (psi + sign * P_ij psi) / 2, unnormalized. sign must be +1 or -1.
WaveFunction transposition_project(const WaveFunction& psi, int i, int j, int sign);

enum class Verdict { Pass, Fail, Inconclusive };
std::string_view to_string(Verdict v) noexcept;

struct DecayReport {
  std::vector<double> norms;  // norms[0] is the input norm, then one entry per round
  double final_norm = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

inline constexpr double kMixedNullThreshold = 1e-8;

// Alternates the projections symmetric in particles (0,1) and antisymmetric in
// (1,2). A function in both subspaces is zero, so the norm must decay. Pass iff
// the final norm is <= threshold; zero rounds are inconclusive. Needs N = 3.
DecayReport mixed_symmetry_null_check(const WaveFunction& psi0, int iters, double threshold = kMixedNullThreshold);

}  // namespace symw
