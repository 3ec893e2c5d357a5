#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "ahm/fock.hpp"
#include "ahm/lattice.hpp"
#include "ahm/model.hpp"
#include "ahm/report.hpp"
#include "ahm/spectra.hpp"

namespace ahm {

/// O_super, O_CDW, delta rho and O_super + O_super^dagger on a basis closed
/// under pair moves (full space or an sz tower).
struct OrderParameters {
  SparseOperator o_super;
  SparseOperator o_cdw;
  SparseOperator delta_rho;
  SparseOperator o_lambda;
};

OrderParameters order_parameters(const LatticeGraph& g, const BasisPtr& basis);

/// c+_xu c+_xd c_yd c_yu.
Expr pair_correlator_expr(int x, int y, int num_sites);

/// A state functional: thermal average, restricted thermal average, or
/// ground-manifold average.
using Expectation = std::function<cplx(const SparseOperator&)>;

Expectation expectation_of(const ThermalEnsemble& ens, Restriction filter = Restriction::full());
Expectation expectation_of(const GroundManifold& gm);

/// K[x][y] = <c+_xu c+_xd c_yd c_yu>, evaluated on `basis`.
Eigen::MatrixXcd pairing_correlations(const Expectation& ev, const LatticeGraph& g, const BasisPtr& basis);

struct CheckOptions {
  double identity_tol = 1e-10;
  double inequality_tol = 1e-10;
  SolverOptions solver;
};

/// Pairing/spin/density relations between the ensemble of H and the one of
/// its Shiba partner, at mu = 0 and inverse temperature beta.
Report verify_bound_chain(const LatticeGraph& g, const ModelParams& p, double beta, const CheckOptions& opt = {});

/// <O+ O> >= 1/2 <O+ O>^even plus the parity-trace facts behind it.
Report verify_parity_lemma(const LatticeGraph& g, const ModelParams& p, double beta, const CheckOptions& opt = {});

/// Uniqueness and spin of fixed-N attractive ground states, the repulsive
/// multiplet at N = |L|, and the N_up window of attractive ground states.
Report lieb_ground_check(const LatticeGraph& g, const ModelParams& p, int n_particles, const CheckOptions& opt = {});

/// Long-range order bounds from the ground manifolds at mu = 0.
Report verify_lro(const LatticeGraph& g, const ModelParams& p, const CheckOptions& opt = {});

/// Spontaneous magnetization bound for each field strength, with the
/// trial-state and double-commutator diagnostics.
Report magnetization_scan(const LatticeGraph& g, const ModelParams& p, const std::vector<double>& fields,
                          const CheckOptions& opt = {});

/// Operator identities on the full Fock space of g: anticommutators, the
/// interaction rewrite, spin and eta algebra, the pairing double
/// commutators and the Shiba transformation facts.
Report verify_identities(const LatticeGraph& g, const ModelParams& p, const CheckOptions& opt = {});

/// Half filling, pairing positivity and the probability sum for one beta.
Report thermal_checks(const LatticeGraph& g, const ModelParams& p, double beta, const CheckOptions& opt = {});

}  // namespace ahm
