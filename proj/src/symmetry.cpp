#include "symw/symmetry.hpp"

#include <algorithm>
#include <numeric>

#include "symw/error.hpp"

namespace symw {
namespace {

constexpr double kNullProjection = 1e-12;

void require_at_most_three(const WaveFunction& psi) {
  if (psi.grid().num_particles() > 3)
    raise(ErrorCode::UnsupportedParticleCount, "sector projectors support at most 3 particles");
}

WaveFunction project(const WaveFunction& psi, bool antisymmetric) {
  require_at_most_three(psi);
  const auto perms = permutations(psi.grid().num_particles());
  std::vector<cplx> acc(psi.size(), 0.0);
  for (const Permutation& p : perms) {
    const WaveFunction moved = permute(psi, p.sigma);
    const double weight = antisymmetric ? p.sign : 1.0;
    kernels::axpy(weight, moved.amplitudes(), acc);
  }
  kernels::scale(acc, 1.0 / static_cast<double>(perms.size()));
  return WaveFunction(psi.grid_handle(), std::move(acc));
}

ProjectionResult renormalize(WaveFunction projected) {
  const double n = norm(projected);
  if (!(n > kNullProjection)) return {WaveFunction(projected.grid_handle()), true, n};
  return {projected.normalized(), false, n};
}

}  // namespace

std::vector<Permutation> permutations(int n) {
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<Permutation> out;
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (sigma[a] > sigma[b]) ++inversions;
    out.push_back({sigma, inversions % 2 == 0 ? 1 : -1});
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

WaveFunction project_symmetric(const WaveFunction& psi) { return project(psi, false); }
WaveFunction project_antisymmetric(const WaveFunction& psi) { return project(psi, true); }

ProjectionResult symmetrize(const WaveFunction& psi) { return renormalize(project_symmetric(psi)); }
ProjectionResult antisymmetrize(const WaveFunction& psi) { return renormalize(project_antisymmetric(psi)); }

WaveFunction transposition_project(const WaveFunction& psi, int i, int j, int sign) {
  if (sign != 1 && sign != -1) raise(ErrorCode::IndexOutOfRange, "transposition sign must be +1 or -1");
  const WaveFunction swapped = exchange(psi, i, j);
  std::vector<cplx> out(psi.amplitudes().begin(), psi.amplitudes().end());
  kernels::axpy(static_cast<double>(sign), swapped.amplitudes(), out);
  kernels::scale(out, 0.5);
  return WaveFunction(psi.grid_handle(), std::move(out));
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

DecayReport mixed_symmetry_null_check(const WaveFunction& psi0, int iters, double threshold) {
  if (psi0.grid().num_particles() != 3)
    raise(ErrorCode::UnsupportedParticleCount, "mixed-symmetry check needs exactly 3 particles");
  DecayReport report;
  WaveFunction psi = psi0;
  report.norms.push_back(norm(psi));
  for (int round = 0; round < iters; ++round) {
    psi = transposition_project(psi, 0, 1, +1);
    psi = transposition_project(psi, 1, 2, -1);
    report.norms.push_back(norm(psi));
  }
  report.final_norm = report.norms.back();
  if (iters <= 0)
    report.verdict = Verdict::Inconclusive;
  else
    report.verdict = report.final_norm <= threshold ? Verdict::Pass : Verdict::Fail;
  return report;
}

}  // namespace symw
