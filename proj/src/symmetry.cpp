#include "ahm/symmetry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "ahm/errors.hpp"

namespace ahm {

namespace {

// U with U c+_m U^dagger = c+_m for unmapped modes and eta_m c_m for mapped
// ones, fixed by U|0> = |all mapped modes filled>. The image of a basis word
// is obtained by applying that operator string to the filled reference.
SparseOperator mode_particle_hole(const LatticeGraph& g, const BasisPtr& codomain, bool map_up) {
  const int n = g.num_sites();
  if (codomain->num_sites() != n) throw BasisMismatch("basis and lattice sizes differ");
  std::vector<Sector> pre;
  for (const auto& s : codomain->sectors()) pre.push_back({map_up ? n - s.n_up : s.n_up, n - s.n_down});
  const BasisPtr domain = Basis::make(n, std::move(pre));

  const Word down_block = ((Word{1} << n) - 1) << n;
  const Word mapped = map_up ? down_block | ((Word{1} << n) - 1) : down_block;
  std::vector<Eigen::Triplet<cplx>> triplets;
  triplets.reserve(static_cast<std::size_t>(domain->dim()));
  std::vector<Ladder> ops;
  for (Eigen::Index col = 0; col < domain->dim(); ++col) {
    const Word w = domain->config(col);
    ops.clear();
    int phase = 1;
    for (int m = 0; m < 2 * n; ++m) {
      if (!(w >> m & 1)) continue;
      const bool is_mapped = (mapped >> m & 1) != 0;
      ops.push_back({m, !is_mapped});
      if (is_mapped) phase *= eta(g, m % n);
    }
    Word image = mapped;
    const int sign = apply_word(ops, image);
    const auto row = codomain->index_of(image);
    if (sign == 0 || !row) throw ClosureError("particle-hole image left the target basis");
    triplets.emplace_back(*row, col, static_cast<double>(sign * phase));
  }
  SparseMatrix m(codomain->dim(), domain->dim());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return SparseOperator(domain, codomain, std::move(m));
}

SparseOperator conjugate_by(const LatticeGraph& g, const SparseOperator& op, bool map_up) {
  const auto u_dom = mode_particle_hole(g, op.domain(), map_up);
  const auto u_cod = mode_particle_hole(g, op.codomain(), map_up);
  return u_cod.adjoint() * op * u_dom;
}

}  // namespace

SparseOperator shiba_unitary(const LatticeGraph& g, const BasisPtr& codomain) {
  return mode_particle_hole(g, codomain, false);
}

SparseOperator particle_hole_unitary(const LatticeGraph& g, const BasisPtr& codomain) {
  return mode_particle_hole(g, codomain, true);
}

SparseOperator shiba_conjugate(const LatticeGraph& g, const SparseOperator& op) {
  return conjugate_by(g, op, false);
}

SparseOperator particle_hole_conjugate(const LatticeGraph& g, const SparseOperator& op) {
  return conjugate_by(g, op, true);
}

SparseOperator u_theta(const BasisPtr& basis, double theta) {
  SparseMatrix m(basis->dim(), basis->dim());
  m.reserve(Eigen::VectorXi::Constant(basis->dim(), 1));
  for (Eigen::Index i = 0; i < basis->dim(); ++i)
    m.insert(i, i) = std::polar(1.0, theta * std::popcount(basis->config(i)));
  return SparseOperator(basis, basis, std::move(m));
}

Expr spin_plus_expr(int site, int n) { return cdag(site, Spin::Up, n) * cann(site, Spin::Down, n); }
Expr spin_minus_expr(int site, int n) { return cdag(site, Spin::Down, n) * cann(site, Spin::Up, n); }

Expr spin_expr(int site, SpinComponent c, int n) {
  const cplx i{0.0, 1.0};
  switch (c) {
    case SpinComponent::X: return 0.5 * (spin_plus_expr(site, n) + spin_minus_expr(site, n));
    case SpinComponent::Y: return (-0.5 * i) * (spin_plus_expr(site, n) - spin_minus_expr(site, n));
    case SpinComponent::Z: return 0.5 * (number(site, Spin::Up, n) - number(site, Spin::Down, n));
  }
  return {};
}

Expr total_spin_squared_expr(int n) {
  Expr out;
  for (auto c : {SpinComponent::X, SpinComponent::Y, SpinComponent::Z}) {
    Expr total;
    for (int x = 0; x < n; ++x) total += spin_expr(x, c, n);
    out += total * total;
  }
  return out;
}

SpinOperators spin_ops(const LatticeGraph& g, const BasisPtr& basis) {
  const int n = g.num_sites();
  SpinOperators s{{}, {}, {}, {}, {}, to_operator(total_spin_squared_expr(n), basis, basis)};
  for (int x = 0; x < n; ++x) {
    s.sx.push_back(to_operator(spin_expr(x, SpinComponent::X, n), basis));
    s.sy.push_back(to_operator(spin_expr(x, SpinComponent::Y, n), basis));
    s.sz.push_back(to_operator(spin_expr(x, SpinComponent::Z, n), basis));
    s.plus.push_back(to_operator(spin_plus_expr(x, n), basis));
    s.minus.push_back(to_operator(spin_minus_expr(x, n), basis));
  }
  return s;
}

Expr eta_pair_expr(const LatticeGraph& g, int site) {
  const int n = g.num_sites();
  return static_cast<double>(eta(g, site)) * (cdag(site, Spin::Up, n) * cdag(site, Spin::Down, n));
}

double momentum_phase(const LatticeGraph& g, const std::vector<double>& p, int site) {
  const bool zero = std::all_of(p.begin(), p.end(), [](double v) { return v == 0.0; });
  if (zero) return 0.0;
  if (!g.has_geometry()) throw ConfigError(g.name() + " has no coordinates; only p = 0 is defined");
  const std::size_t rank = g.extents().size();
  if (p.size() != rank) throw ConfigError("momentum has the wrong number of components");
  double phase = 0.0;
  for (std::size_t a = 0; a < rank; ++a) {
    const double period = static_cast<double>(g.extents()[a]) / g.cell_step()[a];
    if (g.periodic()[a]) {
      const double k = p[a] * period / (2.0 * std::numbers::pi);
      if (std::abs(k - std::round(k)) > 1e-9)
        throw ConfigError("momentum component " + std::to_string(p[a]) + " is not commensurate with period " +
                          std::to_string(period));
    }
    phase += p[a] * static_cast<double>(g.positions()[static_cast<std::size_t>(site)][a]) / g.cell_step()[a];
  }
  return phase;
}

Expr eta_momentum_expr(const LatticeGraph& g, const std::vector<double>& p) {
  Expr out;
  for (int x = 0; x < g.num_sites(); ++x) out += std::polar(1.0, momentum_phase(g, p, x)) * eta_pair_expr(g, x);
  return out;
}

EtaOperators eta_ops(const LatticeGraph& g, const BasisPtr& basis, const std::vector<double>& p) {
  EtaOperators e{{}, to_operator(eta_momentum_expr(g, p), basis)};
  for (int x = 0; x < g.num_sites(); ++x) e.a.push_back(to_operator(eta_pair_expr(g, x), basis));
  return e;
}

}  // namespace ahm
