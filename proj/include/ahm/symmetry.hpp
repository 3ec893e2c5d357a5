#pragma once

#include <vector>

#include "ahm/fock.hpp"
#include "ahm/lattice.hpp"

namespace ahm {

/// Shiba transformation U_S as a signed permutation onto `codomain`:
///   U_S^dagger c_xd U_S = eta_x c_xd^dagger,  U_S^dagger c_xu U_S = c_xu.
/// The domain is the preimage basis with sectors (N_up, L - N_down).
SparseOperator shiba_unitary(const LatticeGraph& g, const BasisPtr& codomain);

/// Full particle-hole map c_xs -> eta_x c_xs^dagger on both spins. Domain has
/// sectors (L - N_up, L - N_down).
SparseOperator particle_hole_unitary(const LatticeGraph& g, const BasisPtr& codomain);

/// U_S^dagger op U_S.
SparseOperator shiba_conjugate(const LatticeGraph& g, const SparseOperator& op);
/// U_ph^dagger op U_ph.
SparseOperator particle_hole_conjugate(const LatticeGraph& g, const SparseOperator& op);

/// exp(i theta N), diagonal.
SparseOperator u_theta(const BasisPtr& basis, double theta);

enum class SpinComponent { X, Y, Z };

/// S^(i)_x = 1/2 (c+_xu, c+_xd) tau^(i) (c_xu, c_xd)^T.
Expr spin_expr(int site, SpinComponent c, int num_sites);
Expr spin_plus_expr(int site, int num_sites);   // c+_xu c_xd
Expr spin_minus_expr(int site, int num_sites);  // c+_xd c_xu
/// Total S^2 = sum_i (sum_x S^(i)_x)^2.
Expr total_spin_squared_expr(int num_sites);

struct SpinOperators {
  std::vector<SparseOperator> sx, sy, sz, plus, minus;  // per site
  SparseOperator s_squared;
};

SpinOperators spin_ops(const LatticeGraph& g, const BasisPtr& basis);

/// a_x = eta_x c+_xu c+_xd.
Expr eta_pair_expr(const LatticeGraph& g, int site);
/// O_eta(p) = sum_x a_x exp(i p.x). `p` has one entry per axis (empty or
/// all-zero for graphs without geometry); periodic axes need p = 2 pi k / L.
Expr eta_momentum_expr(const LatticeGraph& g, const std::vector<double>& p);

struct EtaOperators {
  std::vector<SparseOperator> a;  // per site
  SparseOperator o_eta;
};

EtaOperators eta_ops(const LatticeGraph& g, const BasisPtr& basis, const std::vector<double>& p);

/// p . x for site x in cell units; throws ConfigError for incommensurate p.
double momentum_phase(const LatticeGraph& g, const std::vector<double>& p, int site);

}  // namespace ahm
