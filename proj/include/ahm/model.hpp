#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ahm/fock.hpp"
#include "ahm/lattice.hpp"

namespace ahm {

/// Couplings of the attractive Hubbard model
///   H = sum_edges t_xy sum_s (c+_xs c_ys + h.c.) - sum_x U_x (n_xu - 1/2)(n_xd - 1/2) + mu N
/// with an optional pairing field -B |L| (O_super + O_super^dagger).
struct ModelParams {
  double t = 1.0;                                // multiplies each edge's base amplitude
  std::map<std::pair<int, int>, double> edge_t;  // absolute per-edge overrides, keyed (min, max)
  double U = 4.0;
  std::vector<double> site_U;  // per-site override when non-empty
  double mu = 0.0;
  double B = 0.0;

  double hopping(const Edge& e) const;
  double coupling(int x) const;
  /// sup |t_xy| over the graph.
  double t0(const LatticeGraph& g) const;
  /// U_x > 0 everywhere, mu >= 0, B >= 0, overrides refer to existing edges.
  void validate(const LatticeGraph& g) const;
  /// Same hopping on every edge and same U on every site.
  bool uniform(const LatticeGraph& g) const;
};

/// Compact "t=.. U=.. mu=.. B=.." label for reports.
std::string describe(const ModelParams& p);

Expr hopping_expr(const LatticeGraph& g, const ModelParams& p, Spin s);
Expr interaction_expr(const LatticeGraph& g, const ModelParams& p);
Expr total_number_expr(int num_sites);
/// Full Hamiltonian including the mu term (and no pairing field).
Expr hamiltonian_expr(const LatticeGraph& g, const ModelParams& p);
/// O_super = |L|^-1 sum_x c_xd c_xu.
Expr o_super_expr(int num_sites);

SparseOperator build_hamiltonian(const LatticeGraph& g, const ModelParams& p, const BasisPtr& basis);

struct HamiltonianParts {
  SparseOperator hop_up;
  SparseOperator hop_down;
  SparseOperator hop;
  SparseOperator interaction;
  SparseOperator n_total;
};

/// H = hop_up + hop_down + interaction + mu * n_total.
HamiltonianParts build_parts(const LatticeGraph& g, const ModelParams& p, const BasisPtr& basis);

/// H(B) = H - B |L| (O_super + O_super^dagger). Requires a basis closed under
/// pair creation/annihilation (e.g. full or an sz tower); throws ClosureError
/// otherwise.
SparseOperator build_field_hamiltonian(const LatticeGraph& g, const ModelParams& p, const BasisPtr& basis);

struct LocalTerm {
  int cell;
  std::vector<int> support;
  Expr h;
};

/// Split H into cell-local pieces h(U_x0) whose sum is H. Throws ConfigError
/// for non-uniform couplings.
std::vector<LocalTerm> local_decomposition(const LatticeGraph& g, const ModelParams& p,
                                           const UnitCellDecomposition& cells);

}  // namespace ahm
