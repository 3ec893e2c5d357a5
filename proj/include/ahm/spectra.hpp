#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ahm/fock.hpp"

namespace ahm {

struct SolverOptions {
  Eigen::Index dense_threshold = 4096;  // dense eigensolver up to this block dimension
  double degeneracy_rel = 1e-8;         // manifold tolerance eps = degeneracy_rel (1 + |E0|)
  double krylov_tol = 1e-10;
  int krylov_states = 4;                // eigenpairs requested per Krylov block
  int krylov_basis = 0;                 // 0 = automatic
  int max_restarts = 1000;
  unsigned long long seed = 20240531ULL;
  int thermal_max_sites = 8;            // size guard for full diagonalization
  bool allow_large = false;             // override for the guard
};

/// Eigenpairs of one coupled block of a Hermitian operator. Vector rows
/// follow `indices` (basis positions of the block, ascending).
struct EigenPairs {
  Eigen::VectorXd values;  // ascending
  bool real = false;
  Eigen::MatrixXd real_vectors;    // used when `real`
  Eigen::MatrixXcd vectors;        // used otherwise
  std::vector<Eigen::Index> indices;
  std::vector<std::size_t> sector_blocks;
  Eigen::VectorXd residuals;
  bool krylov = false;

  Eigen::Index size() const { return values.size(); }
  Eigen::VectorXcd column(Eigen::Index k) const;
  Eigen::MatrixXcd columns(Eigen::Index first, Eigen::Index count) const;
};

/// Groups of basis sectors connected by nonzero entries of H. For
/// particle-conserving H each sector is its own group.
std::vector<std::vector<std::size_t>> coupled_blocks(const SparseOperator& h);

/// Lowest `k` eigenpairs of the square Hermitian operator restricted to the
/// given sector blocks. Dense below the threshold (all pairs when
/// k <= 0), Krylov above. Krylov failures throw ConvergenceError.
EigenPairs lowest_eigenpairs(const SparseOperator& h, const std::vector<std::size_t>& blocks, int k,
                             const SolverOptions& opt);

struct GroundManifold {
  double energy = 0.0;
  std::vector<StateVector> states;                // orthonormal
  std::vector<std::optional<Sector>> sector_labels;  // per state, when sector-pure
  double degeneracy_tolerance = 0.0;
  /// Lowest level above the manifold, when known (auditing borderline cases).
  std::optional<double> next_energy;
  /// True when a Krylov block returned only near-degenerate states, so the
  /// manifold might be incomplete.
  bool possibly_truncated = false;
  bool krylov = false;
  double max_residual = 0.0;

  std::size_t dimension() const { return states.size(); }
};

/// Lowest-energy eigenspace of H over its whole basis, treating the matrix
/// as a single block; `k` pairs are requested from the eigensolver.
GroundManifold ground_state(const SparseOperator& h, int k, const SolverOptions& opt = {});

/// Lowest-energy eigenspace of H over its basis, solving each coupled block
/// separately and merging within the degeneracy tolerance.
GroundManifold global_ground_manifold(const SparseOperator& h, const SolverOptions& opt = {});

/// (1/m) sum_j <Phi_j, op Phi_j>.
cplx ground_expectation(const SparseOperator& op, const GroundManifold& gm);

/// Full eigendecomposition per coupled block (beta independent).
class Spectrum {
 public:
  Spectrum(const SparseOperator& h, const SolverOptions& opt = {});

  const BasisPtr& basis() const { return basis_; }
  const std::vector<EigenPairs>& blocks() const { return blocks_; }
  double min_energy() const { return e_min_; }

 private:
  BasisPtr basis_;
  std::vector<EigenPairs> blocks_;
  double e_min_ = 0.0;
};

/// Grand-canonical Gibbs state exp(-beta H)/Z over a basis restriction.
/// Traces are reported with the common factor exp(beta E_min) removed.
class ThermalEnsemble {
 public:
  ThermalEnsemble(std::shared_ptr<const Spectrum> spectrum, double beta);
  ThermalEnsemble(const SparseOperator& h, double beta, const SolverOptions& opt = {});

  double beta() const { return beta_; }
  const Spectrum& spectrum() const { return *spectrum_; }
  const BasisPtr& basis() const { return spectrum_->basis(); }

  /// Tr(op exp(-beta (H - E_min))) over the sectors accepted by `filter`.
  cplx trace(const SparseOperator& op, const Restriction& filter = Restriction::full()) const;
  /// Tr exp(-beta (H - E_min)) over the filtered sectors.
  double partition(const Restriction& filter = Restriction::full()) const;
  /// Tr(op e^{-beta H}) / Z restricted to `filter`.
  cplx expectation(const SparseOperator& op, const Restriction& filter = Restriction::full()) const;
  /// Sum of Boltzmann probabilities (should be 1).
  double probability_sum() const;

 private:
  std::shared_ptr<const Spectrum> spectrum_;
  double beta_;
};

/// One-shot Tr(op e^{-beta H}) / Z over the filtered sectors of H's basis.
cplx thermal_expectation(const SparseOperator& h, const SparseOperator& op, double beta,
                         const Restriction& filter = Restriction::full(), const SolverOptions& opt = {});

/// Throws SizeGuardError when full diagonalization on `num_sites` is not
/// allowed by the options.
void check_thermal_guard(int num_sites, const SolverOptions& opt);

}  // namespace ahm
