#include "ahm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <lapacke.h>

#include "ahm/errors.hpp"
#include "ahm/lanczos.hpp"

namespace ahm {

Eigen::VectorXcd EigenPairs::column(Eigen::Index k) const {
  if (real) return real_vectors.col(k).cast<cplx>();
  return vectors.col(k);
}

Eigen::MatrixXcd EigenPairs::columns(Eigen::Index first, Eigen::Index count) const {
  if (real) return real_vectors.middleCols(first, count).cast<cplx>();
  return vectors.middleCols(first, count);
}

namespace {

void require_square(const SparseOperator& h) {
  if (!h.is_square()) throw BasisMismatch("Hamiltonian must map its basis to itself");
}

// Block index of every basis position.
std::vector<std::size_t> block_index(const Basis& b) {
  std::vector<std::size_t> out(static_cast<std::size_t>(b.dim()));
  for (std::size_t k = 0; k < b.sectors().size(); ++k)
    for (Eigen::Index i = b.block_offset(k); i < b.block_offset(k + 1); ++i) out[static_cast<std::size_t>(i)] = k;
  return out;
}

std::vector<Eigen::Index> block_rows(const Basis& b, const std::vector<std::size_t>& blocks) {
  std::vector<std::size_t> sorted = blocks;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Eigen::Index> rows;
  for (std::size_t k : sorted)
    for (Eigen::Index i = b.block_offset(k); i < b.block_offset(k + 1); ++i) rows.push_back(i);
  return rows;
}

// Principal submatrix on `rows` (ascending).
SparseMatrix principal(const SparseMatrix& m, const std::vector<Eigen::Index>& rows) {
  std::vector<Eigen::Index> local(static_cast<std::size_t>(m.rows()), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) local[static_cast<std::size_t>(rows[i])] = static_cast<Eigen::Index>(i);
  std::vector<Eigen::Triplet<cplx>> trip;
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (SparseMatrix::InnerIterator it(m, rows[j]); it; ++it) {
      const Eigen::Index r = local[static_cast<std::size_t>(it.row())];
      if (r >= 0) trip.emplace_back(r, static_cast<Eigen::Index>(j), it.value());
    }
  const auto n = static_cast<Eigen::Index>(rows.size());
  SparseMatrix out(n, n);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

double max_imag(const SparseMatrix& m) {
  double v = 0.0;
  for (Eigen::Index j = 0; j < m.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) v = std::max(v, std::abs(it.value().imag()));
  return v;
}

double tolerance(double e0, const SolverOptions& opt) { return opt.degeneracy_rel * (1.0 + std::abs(e0)); }

std::optional<Sector> single_sector(const Basis& b, const EigenPairs& ep) {
  if (ep.sector_blocks.size() == 1) return b.sectors()[ep.sector_blocks.front()];
  return std::nullopt;
}

}  // namespace

std::vector<std::vector<std::size_t>> coupled_blocks(const SparseOperator& h) {
  require_square(h);
  const Basis& b = *h.domain();
  const std::size_t nb = b.sectors().size();
  std::vector<std::size_t> parent(nb);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto owner = block_index(b);
  const SparseMatrix& m = h.matrix();
  for (Eigen::Index j = 0; j < m.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      if (it.value() == cplx{}) continue;
      const auto a = find(owner[static_cast<std::size_t>(it.row())]);
      const auto c = find(owner[static_cast<std::size_t>(j)]);
      if (a != c) parent[std::max(a, c)] = std::min(a, c);
    }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(nb, -1);
  for (std::size_t k = 0; k < nb; ++k) {
    const auto r = find(k);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(k);
  }
  return groups;
}

namespace {

// Lowest `keep` eigenpairs of a dense Hermitian matrix (LAPACK ?syevr/?heevr).
void dense_lowest(Eigen::MatrixXd a, Eigen::Index keep, Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  const char range = keep < a.rows() ? 'I' : 'A';
  lapack_int found = 0;
  Eigen::VectorXd w(a.rows());
  Eigen::MatrixXd z(a.rows(), keep);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(keep));
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', range, 'L', n, a.data(), n, 0.0, 0.0, 1,
                                         static_cast<lapack_int>(keep), 0.0, &found, w.data(), z.data(), n,
                                         support.data());
  if (info != 0 || found != keep) throw ConvergenceError("dense eigensolver failed (info " + std::to_string(info) + ")", 0.0);
  values = w.head(keep);
  vectors = std::move(z);
}

void dense_lowest(Eigen::MatrixXcd a, Eigen::Index keep, Eigen::VectorXd& values, Eigen::MatrixXcd& vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  const char range = keep < a.rows() ? 'I' : 'A';
  lapack_int found = 0;
  Eigen::VectorXd w(a.rows());
  Eigen::MatrixXcd z(a.rows(), keep);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(keep));
  const lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', range, 'L', n,
                                         reinterpret_cast<lapack_complex_double*>(a.data()), n, 0.0, 0.0, 1,
                                         static_cast<lapack_int>(keep), 0.0, &found, w.data(),
                                         reinterpret_cast<lapack_complex_double*>(z.data()), n, support.data());
  if (info != 0 || found != keep) throw ConvergenceError("dense eigensolver failed (info " + std::to_string(info) + ")", 0.0);
  values = w.head(keep);
  vectors = std::move(z);
}

}  // namespace

EigenPairs lowest_eigenpairs(const SparseOperator& h, const std::vector<std::size_t>& blocks, int k,
                             const SolverOptions& opt) {
  require_square(h);
  EigenPairs out;
  out.sector_blocks = blocks;
  std::sort(out.sector_blocks.begin(), out.sector_blocks.end());
  out.indices = block_rows(*h.domain(), out.sector_blocks);
  const auto n = static_cast<Eigen::Index>(out.indices.size());
  if (n == 0) return out;
  const SparseMatrix sub = principal(h.matrix(), out.indices);
  out.real = max_imag(sub) == 0.0;

  if (n <= opt.dense_threshold) {
    const Eigen::Index keep = k <= 0 ? n : std::min<Eigen::Index>(k, n);
    if (out.real) {
      const Eigen::MatrixXd d = Eigen::MatrixXd(sub.real());
      dense_lowest(d, keep, out.values, out.real_vectors);
      out.residuals = (d * out.real_vectors - out.real_vectors * out.values.asDiagonal()).colwise().norm().transpose();
    } else {
      const Eigen::MatrixXcd d = Eigen::MatrixXcd(sub);
      dense_lowest(d, keep, out.values, out.vectors);
      out.residuals =
          (d * out.vectors - out.vectors * out.values.cast<cplx>().asDiagonal()).colwise().norm().transpose();
    }
    return out;
  }

  LanczosOptions lo;
  lo.nev = k <= 0 ? opt.krylov_states : k;
  lo.basis_size = opt.krylov_basis;
  lo.tol = opt.krylov_tol;
  lo.max_restarts = opt.max_restarts;
  lo.seed = opt.seed;
  out.krylov = true;
  if (out.real) {
    const Eigen::SparseMatrix<double> r = sub.real();
    auto res = lanczos_lowest<double>(
        [&](const auto& x, auto& y) { y.noalias() = r * x; }, n, lo);
    out.values = res.values;
    out.real_vectors = std::move(res.vectors);
    out.residuals = res.residuals;
  } else {
    auto res = lanczos_lowest<cplx>([&](const auto& x, auto& y) { y.noalias() = sub * x; }, n, lo);
    out.values = res.values;
    out.vectors = std::move(res.vectors);
    out.residuals = res.residuals;
  }
  return out;
}

namespace {

struct Candidate {
  double energy;
  const EigenPairs* block;
  Eigen::Index column;
};

GroundManifold assemble(const BasisPtr& basis, const std::vector<EigenPairs>& blocks, const SolverOptions& opt) {
  GroundManifold gm;
  std::vector<Candidate> all;
  for (const auto& b : blocks)
    for (Eigen::Index i = 0; i < b.size(); ++i) all.push_back({b.values[i], &b, i});
  if (all.empty()) throw BasisMismatch("ground state of an empty basis");
  std::stable_sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) { return a.energy < b.energy; });
  gm.energy = all.front().energy;
  gm.degeneracy_tolerance = tolerance(gm.energy, opt);
  for (const auto& c : all) {
    if (c.energy - gm.energy > gm.degeneracy_tolerance) {
      if (!gm.next_energy || c.energy < *gm.next_energy) gm.next_energy = c.energy;
      continue;
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis->dim());
    const Eigen::VectorXcd col = c.block->column(c.column);
    for (std::size_t r = 0; r < c.block->indices.size(); ++r) v[c.block->indices[r]] = col[static_cast<Eigen::Index>(r)];
    gm.states.push_back({basis, std::move(v)});
    gm.sector_labels.push_back(single_sector(*basis, *c.block));
    gm.max_residual = std::max(gm.max_residual, c.block->residuals.size() ? c.block->residuals[c.column] : 0.0);
  }
  for (const auto& b : blocks) {
    if (!b.krylov) continue;
    gm.krylov = true;
    if (b.size() > 0 && b.values[b.size() - 1] - gm.energy <= gm.degeneracy_tolerance &&
        b.size() < static_cast<Eigen::Index>(b.indices.size()))
      gm.possibly_truncated = true;
  }
  return gm;
}

// Truncated blocks are re-solved with more requested pairs until the
// returned set reaches above the degeneracy window.
EigenPairs solve_for_ground(const SparseOperator& h, const std::vector<std::size_t>& blocks, int k,
                            const SolverOptions& opt) {
  EigenPairs ep = lowest_eigenpairs(h, blocks, k, opt);
  while (ep.size() > 0) {
    const double tol = tolerance(ep.values[0], opt);
    const auto n = static_cast<Eigen::Index>(ep.indices.size());
    if (ep.values[ep.size() - 1] - ep.values[0] > tol || ep.size() >= n || ep.size() >= 64) break;
    ep = lowest_eigenpairs(h, blocks, static_cast<int>(std::min<Eigen::Index>(2 * ep.size(), n)), opt);
  }
  return ep;
}

}  // namespace

GroundManifold ground_state(const SparseOperator& h, int k, const SolverOptions& opt) {
  require_square(h);
  std::vector<std::size_t> all(h.domain()->sectors().size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<EigenPairs> blocks{solve_for_ground(h, all, k, opt)};
  return assemble(h.domain(), blocks, opt);
}

GroundManifold global_ground_manifold(const SparseOperator& h, const SolverOptions& opt) {
  require_square(h);
  std::vector<EigenPairs> blocks;
  for (const auto& group : coupled_blocks(h)) blocks.push_back(solve_for_ground(h, group, opt.krylov_states, opt));
  return assemble(h.domain(), blocks, opt);
}

cplx ground_expectation(const SparseOperator& op, const GroundManifold& gm) {
  if (gm.states.empty()) throw BasisMismatch("empty ground manifold");
  cplx sum{};
  for (const auto& s : gm.states) sum += inner(s, op, s);
  return sum / static_cast<double>(gm.states.size());
}

void check_thermal_guard(int num_sites, const SolverOptions& opt) {
  if (num_sites > opt.thermal_max_sites && !opt.allow_large)
    throw SizeGuardError("full diagonalization on " + std::to_string(num_sites) + " sites exceeds the limit of " +
                         std::to_string(opt.thermal_max_sites) + "; set the size-guard override to proceed");
}

Spectrum::Spectrum(const SparseOperator& h, const SolverOptions& opt) : basis_(h.domain()) {
  require_square(h);
  check_thermal_guard(basis_->num_sites(), opt);
  SolverOptions full = opt;
  full.dense_threshold = std::numeric_limits<Eigen::Index>::max();
  e_min_ = std::numeric_limits<double>::infinity();
  for (const auto& group : coupled_blocks(h)) {
    blocks_.push_back(lowest_eigenpairs(h, group, 0, full));
    if (blocks_.back().size() > 0) e_min_ = std::min(e_min_, blocks_.back().values[0]);
  }
  if (!std::isfinite(e_min_)) throw BasisMismatch("spectrum of an empty basis");
}

ThermalEnsemble::ThermalEnsemble(std::shared_ptr<const Spectrum> spectrum, double beta)
    : spectrum_(std::move(spectrum)), beta_(beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be finite and non-negative");
}

ThermalEnsemble::ThermalEnsemble(const SparseOperator& h, double beta, const SolverOptions& opt)
    : ThermalEnsemble(std::make_shared<const Spectrum>(h, opt), beta) {}

namespace {

// 1 for block rows whose sector passes the filter.
Eigen::VectorXd filter_mask(const Basis& basis, const EigenPairs& b, const Restriction& filter, bool& any,
                            bool& all) {
  Eigen::VectorXd mask(static_cast<Eigen::Index>(b.indices.size()));
  Eigen::Index r = 0;
  any = false;
  all = true;
  for (std::size_t k : b.sector_blocks) {
    const bool in = filter.contains(basis.sectors()[k]);
    any = any || in;
    all = all && in;
    for (Eigen::Index i = 0; i < basis.block_size(k); ++i) mask[r++] = in ? 1.0 : 0.0;
  }
  return mask;
}

}  // namespace

cplx ThermalEnsemble::trace(const SparseOperator& op, const Restriction& filter) const {
  const Basis& basis = *spectrum_->basis();
  if (!op.domain()->same_as(basis) || !op.codomain()->same_as(basis))
    throw BasisMismatch("operator is not defined on the ensemble basis");
  const double e_min = spectrum_->min_energy();
  cplx sum{};
  constexpr Eigen::Index chunk = 128;
  for (const auto& b : spectrum_->blocks()) {
    bool any = false, all = false;
    const Eigen::VectorXd mask = filter_mask(basis, b, filter, any, all);
    if (!any) continue;
    const SparseMatrix sub = principal(op.matrix(), b.indices);
    for (Eigen::Index first = 0; first < b.size(); first += chunk) {
      const Eigen::Index count = std::min(chunk, b.size() - first);
      const Eigen::MatrixXcd v = b.columns(first, count);
      const Eigen::MatrixXcd ov = sub * v;
      for (Eigen::Index c = 0; c < count; ++c) {
        const double w = std::exp(-beta_ * (b.values[first + c] - e_min));
        if (w == 0.0) continue;
        const cplx d = all ? v.col(c).dot(ov.col(c)) : v.col(c).dot(mask.cast<cplx>().cwiseProduct(ov.col(c)));
        sum += w * d;
      }
    }
  }
  return sum;
}

double ThermalEnsemble::partition(const Restriction& filter) const {
  const Basis& basis = *spectrum_->basis();
  const double e_min = spectrum_->min_energy();
  double z = 0.0;
  for (const auto& b : spectrum_->blocks()) {
    bool any = false, all = false;
    const Eigen::VectorXd mask = filter_mask(basis, b, filter, any, all);
    if (!any) continue;
    for (Eigen::Index c = 0; c < b.size(); ++c) {
      const double w = std::exp(-beta_ * (b.values[c] - e_min));
      if (all) {
        z += w;
      } else {
        const Eigen::VectorXcd v = b.column(c);
        z += w * (mask.cast<cplx>().cwiseProduct(v)).squaredNorm();
      }
    }
  }
  return z;
}

cplx ThermalEnsemble::expectation(const SparseOperator& op, const Restriction& filter) const {
  const double z = partition(filter);
  if (!(z > 0.0)) throw ConfigError("restricted partition function vanishes for " + filter.label());
  return trace(op, filter) / z;
}

double ThermalEnsemble::probability_sum() const {
  const double z = partition();
  const double e_min = spectrum_->min_energy();
  double s = 0.0;
  for (const auto& b : spectrum_->blocks())
    for (Eigen::Index c = 0; c < b.size(); ++c) s += std::exp(-beta_ * (b.values[c] - e_min)) / z;
  return s;
}

cplx thermal_expectation(const SparseOperator& h, const SparseOperator& op, double beta, const Restriction& filter,
                         const SolverOptions& opt) {
  return ThermalEnsemble(h, beta, opt).expectation(op, filter);
}

}  // namespace ahm
