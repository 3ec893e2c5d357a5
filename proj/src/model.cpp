#include "ahm/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ahm/errors.hpp"

namespace ahm {

double ModelParams::hopping(const Edge& e) const {
  const auto it = edge_t.find({std::min(e.x, e.y), std::max(e.x, e.y)});
  return it != edge_t.end() ? it->second : t * e.t;
}

double ModelParams::coupling(int x) const {
  return site_U.empty() ? U : site_U.at(static_cast<std::size_t>(x));
}

double ModelParams::t0(const LatticeGraph& g) const {
  double m = 0.0;
  for (const auto& e : g.edges()) m = std::max(m, std::abs(hopping(e)));
  return m;
}

void ModelParams::validate(const LatticeGraph& g) const {
  if (!site_U.empty() && static_cast<int>(site_U.size()) != g.num_sites())
    throw ConfigError("per-site U list has the wrong length");
  for (int x = 0; x < g.num_sites(); ++x)
    if (!(coupling(x) > 0.0)) throw ConfigError("U must be positive on every site");
  if (mu < 0.0) throw ConfigError("chemical potential must be non-negative");
  if (B < 0.0) throw ConfigError("pairing field B must be non-negative");
  for (const auto& [key, value] : edge_t) {
    const bool found = std::any_of(g.edges().begin(), g.edges().end(),
                                   [&](const Edge& e) { return e.x == key.first && e.y == key.second; });
    if (!found)
      throw ConfigError("hopping override for (" + std::to_string(key.first) + "," +
                        std::to_string(key.second) + ") does not match an edge");
    if (!std::isfinite(value)) throw ConfigError("hopping override must be finite");
  }
}

bool ModelParams::uniform(const LatticeGraph& g) const {
  for (const auto& e : g.edges())
    if (hopping(e) != hopping(g.edges().front())) return false;
  for (int x = 0; x < g.num_sites(); ++x)
    if (coupling(x) != coupling(0)) return false;
  return true;
}

std::string describe(const ModelParams& p) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "t=%g U=%g mu=%g B=%g", p.t, p.U, p.mu, p.B);
  std::string out = buf;
  if (!p.edge_t.empty()) out += " edge_t=" + std::to_string(p.edge_t.size());
  if (!p.site_U.empty()) out += " site_U";
  return out;
}

namespace {

Expr bond_expr(int x, int y, double t, Spin s, int n) {
  return t * (cdag(x, s, n) * cann(y, s, n) + cdag(y, s, n) * cann(x, s, n));
}

Expr site_interaction(int x, double u, int n) {
  const Expr half(0.5);
  return -u * ((number(x, Spin::Up, n) - half) * (number(x, Spin::Down, n) - half));
}

Expr site_number(int x, int n) { return number(x, Spin::Up, n) + number(x, Spin::Down, n); }

}  // namespace

Expr hopping_expr(const LatticeGraph& g, const ModelParams& p, Spin s) {
  Expr e;
  for (const auto& edge : g.edges()) {
    const double t = p.hopping(edge);
    if (t != 0.0) e += bond_expr(edge.x, edge.y, t, s, g.num_sites());
  }
  return e;
}

Expr interaction_expr(const LatticeGraph& g, const ModelParams& p) {
  Expr e;
  for (int x = 0; x < g.num_sites(); ++x) e += site_interaction(x, p.coupling(x), g.num_sites());
  return e;
}

Expr total_number_expr(int num_sites) {
  Expr e;
  for (int x = 0; x < num_sites; ++x) e += site_number(x, num_sites);
  return e;
}

Expr hamiltonian_expr(const LatticeGraph& g, const ModelParams& p) {
  Expr e = hopping_expr(g, p, Spin::Up) + hopping_expr(g, p, Spin::Down) + interaction_expr(g, p);
  if (p.mu != 0.0) e += p.mu * total_number_expr(g.num_sites());
  return e;
}

Expr o_super_expr(int num_sites) {
  Expr e;
  for (int x = 0; x < num_sites; ++x) e += cann(x, Spin::Down, num_sites) * cann(x, Spin::Up, num_sites);
  return e * (1.0 / num_sites);
}

SparseOperator build_hamiltonian(const LatticeGraph& g, const ModelParams& p, const BasisPtr& basis) {
  if (basis->num_sites() != g.num_sites()) throw BasisMismatch("basis and lattice sizes differ");
  return to_operator(hamiltonian_expr(g, p), basis, basis);
}

HamiltonianParts build_parts(const LatticeGraph& g, const ModelParams& p, const BasisPtr& basis) {
  if (basis->num_sites() != g.num_sites()) throw BasisMismatch("basis and lattice sizes differ");
  auto up = to_operator(hopping_expr(g, p, Spin::Up), basis, basis);
  auto down = to_operator(hopping_expr(g, p, Spin::Down), basis, basis);
  auto hop = up + down;
  return {std::move(up), std::move(down), std::move(hop),
          to_operator(interaction_expr(g, p), basis, basis),
          to_operator(total_number_expr(g.num_sites()), basis, basis)};
}

SparseOperator build_field_hamiltonian(const LatticeGraph& g, const ModelParams& p, const BasisPtr& basis) {
  if (basis->num_sites() != g.num_sites()) throw BasisMismatch("basis and lattice sizes differ");
  Expr e = hamiltonian_expr(g, p);
  if (p.B != 0.0) {
    const Expr o = o_super_expr(g.num_sites());
    e -= (p.B * g.num_sites()) * (o + o.adjoint());
  }
  return to_operator(e, basis, basis);
}

std::vector<LocalTerm> local_decomposition(const LatticeGraph& g, const ModelParams& p,
                                           const UnitCellDecomposition& cells) {
  if (!p.uniform(g)) throw ConfigError("local decomposition needs uniform hopping and coupling");
  const int n = g.num_sites();
  std::vector<LocalTerm> out;
  for (std::size_t c = 0; c < cells.cells.size(); ++c) {
    LocalTerm term{static_cast<int>(c), cells.cells[c].support, {}};
    for (int x : cells.cells[c].members) {
      term.h += site_interaction(x, p.coupling(x), n);
      if (p.mu != 0.0) term.h += p.mu * site_number(x, n);
    }
    for (std::size_t k = 0; k < g.edges().size(); ++k) {
      if (cells.cell_of_edge[k] != static_cast<int>(c)) continue;
      const auto& e = g.edges()[k];
      const double t = p.hopping(e);
      term.h += bond_expr(e.x, e.y, t, Spin::Up, n) + bond_expr(e.x, e.y, t, Spin::Down, n);
    }
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace ahm
