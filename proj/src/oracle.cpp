#include "symw/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <cmath>

#include "symw/error.hpp"

namespace symw {
namespace {

using SparseH = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

struct Assembly {
  std::vector<std::size_t> active;
  SparseH matrix;
  double asymmetry = 0.0;
  bool real = true;
};

Assembly assemble(const Grid& g, const Hamiltonian& H, double t) {
  H.validate();
  const bool periodic = g.boundary() == Boundary::Periodic;
  const int rank = g.rank();
  const int d = g.dims();
  const double hbar = H.constants.hbar;
  const double m = H.constants.mass;
  const double q = H.constants.charge;

  Assembly out;
  std::vector<std::size_t> row_of(g.size(), SIZE_MAX);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    bool interior = true;
    for (int a = 0; a < rank && !periodic && interior; ++a) {
      const std::size_t k = g.digit(idx, a);
      interior = k > 0 && k + 1 < g.points(a);
    }
    if (!interior) continue;
    row_of[idx] = out.active.size();
    out.active.push_back(idx);
  }
  const std::size_t n = out.active.size();
  if (n > kOracleMaxPoints) raise(ErrorCode::TooLarge, "dense oracle is limited to 4096 active points");

  std::vector<Eigen::Triplet<cplx>> entries;
  entries.reserve(n * (1 + 2 * rank));
  std::vector<double> config(rank);
  std::vector<double> r(d);
  for (std::size_t row = 0; row < n; ++row) {
    const std::size_t idx = out.active[row];
    g.point(idx, config);
    double diag = H.scalar(config, d, t);
    for (int a = 0; a < rank; ++a) {
      const double h = g.spacing(a);
      diag += hbar * hbar / (m * h * h);
    }
    std::vector<Vec3> field(g.num_particles(), Vec3{});
    if (H.vector) {
      for (int p = 0; p < g.num_particles(); ++p) {
        for (int l = 0; l < d; ++l) r[l] = config[p * d + l];
        field[p] = (*H.vector)(r, t);
        for (int l = 0; l < d; ++l) diag += q * q * field[p][l] * field[p][l] / (2.0 * m);
      }
    }
    if (!std::isfinite(diag)) raise(ErrorCode::NonFinite, "Hamiltonian diagonal is not finite");
    entries.emplace_back(row, row, cplx(diag, 0.0));

    for (int a = 0; a < rank; ++a) {
      const double h = g.spacing(a);
      const std::size_t M = g.points(a);
      const std::size_t s = g.stride(a);
      const std::size_t k = g.digit(idx, a);
      const std::size_t up = k + 1 < M ? idx + s : idx - (M - 1) * s;
      const std::size_t dn = k > 0 ? idx - s : idx + (M - 1) * s;
      const double lap = -hbar * hbar / (2.0 * m * h * h);
      // (i hbar q / m) A . grad with a central difference
      const double A = field[a / d][a % d];
      const double grad = hbar * q * A / (2.0 * m * h);
      if (row_of[up] != SIZE_MAX) entries.emplace_back(row, row_of[up], cplx(lap, grad));
      if (row_of[dn] != SIZE_MAX) entries.emplace_back(row, row_of[dn], cplx(lap, -grad));
    }
  }

  SparseH raw(n, n);
  raw.setFromTriplets(entries.begin(), entries.end());
  const SparseH adj = SparseH(raw.adjoint());
  const SparseH diff = raw - adj;
  for (Eigen::Index k = 0; k < diff.outerSize(); ++k)
    for (SparseH::InnerIterator it(diff, k); it; ++it) out.asymmetry = std::max(out.asymmetry, std::abs(it.value()));
  out.matrix = 0.5 * (raw + adj);
  for (Eigen::Index k = 0; k < out.matrix.outerSize() && out.real; ++k)
    for (SparseH::InnerIterator it(out.matrix, k); it; ++it)
      if (it.value().imag() != 0.0) {
        out.real = false;
        break;
      }
  return out;
}

Eigen::VectorXcd gather(const WaveFunction& psi, const std::vector<std::size_t>& active) {
  Eigen::VectorXcd v(active.size());
  for (std::size_t k = 0; k < active.size(); ++k) v[k] = psi[active[k]];
  return v;
}

WaveFunction scatter(const GridHandle& grid, const std::vector<std::size_t>& active, const Eigen::VectorXcd& v) {
  std::vector<cplx> amps(grid->size(), 0.0);
  for (std::size_t k = 0; k < active.size(); ++k) amps[active[k]] = v[k];
  return WaveFunction(grid, std::move(amps));
}

double one_norm(const SparseH& A) {
  Eigen::VectorXd col = Eigen::VectorXd::Zero(A.cols());
  for (Eigen::Index k = 0; k < A.outerSize(); ++k)
    for (SparseH::InnerIterator it(A, k); it; ++it) col[it.col()] += std::abs(it.value());
  return col.size() ? col.maxCoeff() : 0.0;
}

// v <- exp(-i A tau) v by scaled Taylor series.
void taylor_expm_action(const SparseH& A, double tau, Eigen::VectorXcd& v) {
  const double size = one_norm(A) * std::abs(tau);
  const int pieces = std::max(1, static_cast<int>(std::ceil(size / 0.5)));
  const cplx factor(0.0, -tau / pieces);
  for (int p = 0; p < pieces; ++p) {
    Eigen::VectorXcd term = v;
    Eigen::VectorXcd sum = v;
    for (int k = 1; k <= 40; ++k) {
      term = (factor / static_cast<double>(k)) * (A * term);
      sum += term;
      if (term.norm() <= 1e-18 * sum.norm()) break;
    }
    v = sum;
  }
}

}  // namespace

Eigen::VectorXcd DenseHamiltonian::gather(const WaveFunction& psi) const {
  if (!same_grid(psi.grid(), *grid)) raise(ErrorCode::GridMismatch, "wavefunction is on a different grid");
  return symw::gather(psi, active);
}

WaveFunction DenseHamiltonian::scatter(const Eigen::VectorXcd& v) const { return symw::scatter(grid, active, v); }

DenseHamiltonian dense_hamiltonian(const GridHandle& grid, const Hamiltonian& H, double t) {
  Assembly a = assemble(*grid, H, t);
  DenseHamiltonian out;
  out.grid = grid;
  out.matrix = Eigen::MatrixXcd(a.matrix);
  out.active = std::move(a.active);
  out.asymmetry = a.asymmetry;
  out.real = a.real;
  return out;
}

ExactPropagator::ExactPropagator(DenseHamiltonian H, double hbar) : H_(std::move(H)), hbar_(hbar) {
  if (!(hbar_ > 0.0)) raise(ErrorCode::ConfigInvalid, "hbar must be positive");
  if (H_.real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H_.matrix.real());
    if (es.info() != Eigen::Success) raise(ErrorCode::RuntimeFailure, "eigendecomposition failed");
    values_ = es.eigenvalues();
    vectors_ = es.eigenvectors().cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H_.matrix);
    if (es.info() != Eigen::Success) raise(ErrorCode::RuntimeFailure, "eigendecomposition failed");
    values_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
  }
}

WaveFunction ExactPropagator::eigenstate(Eigen::Index k) const {
  const WaveFunction psi = H_.scatter(vectors_.col(k));
  return psi.normalized();
}

WaveFunction ExactPropagator::evolve(const WaveFunction& psi0, double t) const {
  Eigen::VectorXcd c = vectors_.adjoint() * H_.gather(psi0);
  for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= std::polar(1.0, -values_[k] * t / hbar_);
  return H_.scatter(vectors_ * c);
}

WaveFunction exact_evolve(const WaveFunction& psi0, const Hamiltonian& H, double t, double dt_ref) {
  const GridHandle& grid = psi0.grid_handle();
  if (t == 0.0) return psi0;
  if (!H.time_dependent()) return ExactPropagator(dense_hamiltonian(grid, H, 0.0), H.constants.hbar).evolve(psi0, t);
  if (!(dt_ref > 0.0)) raise(ErrorCode::InvalidScheme, "time-dependent reference evolution needs dt_ref > 0");
  const std::size_t steps = static_cast<std::size_t>(std::ceil(t / dt_ref - 1e-9));
  const double h = t / static_cast<double>(steps);
  Assembly first = assemble(*grid, H, 0.5 * h);
  Eigen::VectorXcd v = gather(psi0, first.active);
  for (std::size_t s = 0; s < steps; ++s) {
    const double mid = (static_cast<double>(s) + 0.5) * h;
    const SparseH A = s == 0 ? first.matrix : assemble(*grid, H, mid).matrix;
    taylor_expm_action(A, h / H.constants.hbar, v);
  }
  return scatter(grid, first.active, v);
}

double projector_product_spectral_radius(const GridHandle& grid) {
  const Grid& g = *grid;
  if (g.num_particles() != 3) raise(ErrorCode::UnsupportedParticleCount, "projector product needs 3 particles");
  const std::size_t n = g.size();
  if (n > kOracleMaxPoints) raise(ErrorCode::TooLarge, "dense oracle is limited to 4096 points");
  const ExchangeMap p01(grid, 0, 1);
  const ExchangeMap p12(grid, 1, 2);

  // Pi as an n x n matrix: row dest has 1/2 on dest and sign/2 on source(dest).
  auto projector = [&](const ExchangeMap& p, double sign) {
    Eigen::SparseMatrix<double> P(n, n);
    std::vector<Eigen::Triplet<double>> e;
    e.reserve(2 * n);
    for (std::size_t dest = 0; dest < n; ++dest) {
      e.emplace_back(dest, dest, 0.5);
      e.emplace_back(dest, p.source(dest), 0.5 * sign);
    }
    P.setFromTriplets(e.begin(), e.end());
    return P;
  };
  const Eigen::SparseMatrix<double> A = projector(p01, +1.0);
  const Eigen::SparseMatrix<double> B = projector(p12, -1.0);
  const Eigen::SparseMatrix<double> product = A * B * A;
  const Eigen::MatrixXd dense = Eigen::MatrixXd(product);
  const Eigen::MatrixXd sym = 0.5 * (dense + dense.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) raise(ErrorCode::RuntimeFailure, "eigendecomposition failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace symw
