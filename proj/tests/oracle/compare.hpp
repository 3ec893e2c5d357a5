#pragma once

// Library vs naive dense reference on the full Fock space of a small graph.

#include <algorithm>
#include <cmath>

#include "oracle/dense_oracle.hpp"

#include "ahm/model.hpp"
#include "ahm/observables.hpp"
#include "ahm/spectra.hpp"
#include "ahm/symmetry.hpp"

namespace oracle {

inline Mat words_of(const ahm::SparseOperator& op) {
  const auto& dom = *op.domain();
  const auto& cod = *op.codomain();
  const Eigen::Index dim = Eigen::Index{1} << (2 * dom.num_sites());
  Mat out = Mat::Zero(dim, dim);
  for (int k = 0; k < op.matrix().outerSize(); ++k)
    for (ahm::SparseMatrix::InnerIterator it(op.matrix(), k); it; ++it)
      out(static_cast<Eigen::Index>(cod.config(it.row())), static_cast<Eigen::Index>(dom.config(it.col()))) =
          it.value();
  return out;
}

struct Comparison {
  double operators = 0.0;     // ladder operators and H, entrywise
  double energies = 0.0;      // sector ground energies
  double thermal = 0.0;       // Gibbs expectations
  double ground = 0.0;        // ground-manifold expectations
  double worst() const { return std::max({operators, energies, thermal, ground}); }
};

inline Comparison compare(const ahm::LatticeGraph& g, const ahm::ModelParams& p, double beta) {
  using namespace ahm;
  const int n = g.num_sites();
  const Fock f(n);
  const auto full = Basis::restricted(n, Restriction::full());
  Comparison c;
  for (int x = 0; x < n; ++x)
    for (bool down : {false, true}) {
      const auto op = annihilation(x, down ? Spin::Down : Spin::Up, full);
      const Mat lib = words_of(to_operator(cann(x, down ? Spin::Down : Spin::Up, n), full, full));
      c.operators = std::max(c.operators, (lib - f.c(f.mode(x, down))).cwiseAbs().maxCoeff());
      (void)op;
    }
  const Mat h_ref = f.hamiltonian(g, p);
  const auto h = build_hamiltonian(g, p, full);
  c.operators = std::max(c.operators, (words_of(h) - h_ref).cwiseAbs().maxCoeff());

  for (int nu = 0; nu <= n; ++nu)
    for (int nd = 0; nd <= n; ++nd) {
      const auto idx = f.words([&](int a, int b) { return a == nu && b == nd; });
      const double ref = ground_energy(restrict(h_ref, idx));
      const auto hs = build_hamiltonian(g, p, Basis::sector(n, nu, nd));
      c.energies = std::max(c.energies, std::abs(global_ground_manifold(hs).energy - ref));
    }

  std::vector<std::pair<SparseOperator, Mat>> probes;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto e = pair_correlator_expr(x, y, n);
      probes.emplace_back(to_operator(e, full, full),
                          f.cdag(f.mode(x, false)) * f.cdag(f.mode(x, true)) * f.c(f.mode(y, true)) *
                              f.c(f.mode(y, false)));
    }
  for (int x = 0; x < n; ++x) probes.emplace_back(number_op(x, Spin::Up, full), f.n(f.mode(x, false)));
  probes.emplace_back(to_operator(total_spin_squared_expr(n), full, full), [&] {
    Mat sx = Mat::Zero(f.dim(), f.dim()), sy = sx, sz = sx;
    const cplx i(0, 1);
    for (int x = 0; x < n; ++x) {
      const Mat up = f.c(f.mode(x, false)), dn = f.c(f.mode(x, true));
      sx += 0.5 * (up.adjoint() * dn + dn.adjoint() * up);
      sy += 0.5 * (-i * up.adjoint() * dn + i * dn.adjoint() * up);
      sz += 0.5 * (up.adjoint() * up - dn.adjoint() * dn);
    }
    return Mat(sx * sx + sy * sy + sz * sz);
  }());

  const ThermalEnsemble ens(h, beta);
  for (const auto& [op, ref] : probes)
    c.thermal = std::max(c.thermal, std::abs(ens.expectation(op) - thermal(h_ref, ref, beta)));

  const auto gm = global_ground_manifold(h);
  Eigen::SelfAdjointEigenSolver<Mat> es(h_ref);
  const double e0 = es.eigenvalues()[0];
  const double tol = 1e-8 * (1.0 + std::abs(e0));
  Eigen::Index m = 0;
  while (m < es.eigenvalues().size() && es.eigenvalues()[m] <= e0 + tol) ++m;
  c.energies = std::max(c.energies, std::abs(gm.energy - e0));
  c.ground = gm.dimension() == static_cast<std::size_t>(m) ? 0.0 : 1.0;
  const Mat v = es.eigenvectors().leftCols(m);
  for (const auto& [op, ref] : probes) {
    const cplx r = (v.adjoint() * ref * v).trace() / static_cast<double>(m);
    c.ground = std::max(c.ground, std::abs(ground_expectation(op, gm) - r));
  }
  return c;
}

}  // namespace oracle
