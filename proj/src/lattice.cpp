#include "ahm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "ahm/errors.hpp"

namespace ahm {

namespace {

std::vector<Edge> merge_edges(int n, const std::vector<Sublattice>& sub, std::vector<Edge> edges) {
  std::map<std::pair<int, int>, double> merged;
  for (const auto& e : edges) {
    if (e.x < 0 || e.y < 0 || e.x >= n || e.y >= n)
      throw LatticeError("edge (" + std::to_string(e.x) + "," + std::to_string(e.y) +
                         ") references a site outside the lattice");
    if (e.x == e.y || sub[static_cast<std::size_t>(e.x)] == sub[static_cast<std::size_t>(e.y)])
      throw BipartitenessError("edge (" + std::to_string(e.x) + "," + std::to_string(e.y) +
                               ") joins two sites of the same sublattice");
    merged[{std::min(e.x, e.y), std::max(e.x, e.y)}] += e.t;
  }
  std::vector<Edge> out;
  out.reserve(merged.size());
  for (const auto& [key, t] : merged) out.push_back({key.first, key.second, t});
  return out;
}

bool connected(int n, const std::vector<Edge>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a)
      a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
    return a;
  };
  for (const auto& e : edges)
    if (e.t != 0.0) parent[static_cast<std::size_t>(find(e.x))] = find(e.y);
  for (int i = 1; i < n; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

LatticeGraph LatticeGraph::custom(int num_sites, std::vector<Sublattice> sublattice,
                                  std::vector<Edge> edges, std::string name) {
  if (num_sites < 1) throw LatticeError("lattice needs at least one site");
  if (static_cast<int>(sublattice.size()) != num_sites)
    throw LatticeError("sublattice list has " + std::to_string(sublattice.size()) +
                       " entries for " + std::to_string(num_sites) + " sites");
  LatticeGraph g;
  g.edges_ = merge_edges(num_sites, sublattice, std::move(edges));
  g.sublattice_ = std::move(sublattice);
  g.name_ = std::move(name);
  if (!connected(num_sites, g.edges_))
    throw LatticeError("lattice is not connected through nonzero hoppings");
  return g;
}

int LatticeGraph::count_a() const {
  return static_cast<int>(std::count(sublattice_.begin(), sublattice_.end(), Sublattice::A));
}

int LatticeGraph::count_b() const { return num_sites() - count_a(); }

double LatticeGraph::lieb_spin() const { return std::abs(count_a() - count_b()) / 2.0; }

std::vector<std::pair<int, double>> LatticeGraph::neighbors(int x) const {
  std::vector<std::pair<int, double>> out;
  for (const auto& e : edges_) {
    if (e.x == x) out.emplace_back(e.y, e.t);
    if (e.y == x) out.emplace_back(e.x, e.t);
  }
  return out;
}

int LatticeGraph::max_coordination() const {
  int z = 0;
  for (int x = 0; x < num_sites(); ++x) z = std::max(z, coordination(x));
  return z;
}

double LatticeGraph::max_abs_hopping() const {
  double m = 0.0;
  for (const auto& e : edges_) m = std::max(m, std::abs(e.t));
  return m;
}

std::optional<int> LatticeGraph::site_at(const std::vector<int>& pos) const {
  for (std::size_t i = 0; i < positions_.size(); ++i)
    if (positions_[i] == pos) return static_cast<int>(i);
  return std::nullopt;
}

LatticeGraph build_chain(int length, bool pbc) {
  if (length < 2) throw LatticeError("chain needs at least 2 sites");
  auto g = build_hypercube({length}, pbc);
  std::ostringstream name;
  name << "chain(" << length << "," << (pbc ? "pbc" : "open") << ")";
  g.name_ = name.str();
  return g;
}

LatticeGraph build_star(int leaves) {
  if (leaves < 1) throw LatticeError("star needs at least one leaf");
  std::vector<Sublattice> sub(static_cast<std::size_t>(leaves + 1), Sublattice::A);
  sub[0] = Sublattice::B;
  std::vector<Edge> edges;
  for (int k = 1; k <= leaves; ++k) edges.push_back({0, k, 1.0});
  return LatticeGraph::custom(leaves + 1, std::move(sub), std::move(edges),
                              "star(" + std::to_string(leaves) + ")");
}

LatticeGraph build_hypercube(const std::vector<int>& dims, bool pbc) {
  if (dims.empty()) throw LatticeError("hypercube needs at least one axis");
  int n = 1;
  for (int d : dims) {
    if (d < 1) throw LatticeError("hypercube side lengths must be positive");
    if (pbc && d % 2 != 0)
      throw BipartitenessError("periodic side of odd length " + std::to_string(d) +
                               " is not bipartite");
    n *= d;
  }
  const std::size_t rank = dims.size();
  std::vector<std::vector<int>> pos(static_cast<std::size_t>(n), std::vector<int>(rank));
  std::vector<Sublattice> sub(static_cast<std::size_t>(n));
  auto index_of = [&](const std::vector<int>& c) {
    int idx = 0;
    for (std::size_t a = rank; a-- > 0;) idx = idx * dims[a] + c[a];
    return idx;
  };
  for (int s = 0; s < n; ++s) {
    int rem = s, parity = 0;
    for (std::size_t a = 0; a < rank; ++a) {
      pos[static_cast<std::size_t>(s)][a] = rem % dims[a];
      parity += rem % dims[a];
      rem /= dims[a];
    }
    sub[static_cast<std::size_t>(s)] = parity % 2 == 0 ? Sublattice::A : Sublattice::B;
  }
  std::vector<Edge> edges;
  for (int s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < rank; ++a) {
      auto c = pos[static_cast<std::size_t>(s)];
      if (c[a] + 1 < dims[a]) {
        c[a] += 1;
      } else if (pbc && dims[a] > 1) {
        c[a] = 0;
      } else {
        continue;
      }
      edges.push_back({s, index_of(c), 1.0});
    }
  }
  std::ostringstream name;
  name << "hypercube(";
  for (std::size_t a = 0; a < rank; ++a) name << (a ? "x" : "") << dims[a];
  name << "," << (pbc ? "pbc" : "open") << ")";
  auto g = LatticeGraph::custom(n, std::move(sub), std::move(edges), name.str());
  g.positions_ = std::move(pos);
  g.extents_ = dims;
  g.periodic_.assign(rank, pbc);
  g.cell_step_.assign(rank, 1);
  for (int s = 0; s < n; ++s) g.cells_.push_back({s});
  return g;
}

LatticeGraph build_lieb2d(int lx, int ly, bool pbc) {
  if (lx < 1 || ly < 1) throw LatticeError("Lieb lattice needs positive cell counts");
  const int n = 3 * lx * ly;
  if (n % 2 != 0)
    throw LatticeError("Lieb lattice " + std::to_string(lx) + "x" + std::to_string(ly) +
                       " has an odd number of sites (" + std::to_string(n) + ")");
  // Coordinates on the doubled grid: corner (2i,2j), edge centres (2i+1,2j), (2i,2j+1).
  auto corner = [&](int i, int j) { return 3 * (i + lx * j); };
  std::vector<Sublattice> sub(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> pos(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> cells;
  std::vector<Edge> edges;
  for (int j = 0; j < ly; ++j) {
    for (int i = 0; i < lx; ++i) {
      const int c = corner(i, j);
      sub[static_cast<std::size_t>(c)] = Sublattice::B;
      sub[static_cast<std::size_t>(c + 1)] = Sublattice::A;
      sub[static_cast<std::size_t>(c + 2)] = Sublattice::A;
      pos[static_cast<std::size_t>(c)] = {2 * i, 2 * j};
      pos[static_cast<std::size_t>(c + 1)] = {2 * i + 1, 2 * j};
      pos[static_cast<std::size_t>(c + 2)] = {2 * i, 2 * j + 1};
      cells.push_back({c, c + 1, c + 2});
      edges.push_back({c, c + 1, 1.0});
      edges.push_back({c, c + 2, 1.0});
      if (i + 1 < lx || pbc) edges.push_back({c + 1, corner((i + 1) % lx, j), 1.0});
      if (j + 1 < ly || pbc) edges.push_back({c + 2, corner(i, (j + 1) % ly), 1.0});
    }
  }
  std::ostringstream name;
  name << "lieb2d(" << lx << "x" << ly << "," << (pbc ? "pbc" : "open") << ")";
  auto g = LatticeGraph::custom(n, std::move(sub), std::move(edges), name.str());
  g.positions_ = std::move(pos);
  g.extents_ = {2 * lx, 2 * ly};
  g.periodic_ = {pbc, pbc};
  g.cell_step_ = {2, 2};
  g.cells_ = std::move(cells);
  return g;
}

UnitCellDecomposition unit_cells(const LatticeGraph& g) {
  UnitCellDecomposition d;
  const int n = g.num_sites();
  d.cell_of_site.assign(static_cast<std::size_t>(n), -1);
  if (!g.cells().empty()) {
    for (const auto& members : g.cells()) d.cells.push_back({members.front(), members, {}});
  } else {
    for (int s = 0; s < n; ++s) d.cells.push_back({s, {s}, {}});
  }
  for (std::size_t c = 0; c < d.cells.size(); ++c)
    for (int s : d.cells[c].members) d.cell_of_site[static_cast<std::size_t>(s)] = static_cast<int>(c);

  // Forward endpoint: y - x is exactly +1 along one axis (mod the extent).
  auto forward_from = [&](int x, int y) {
    const auto& px = g.positions()[static_cast<std::size_t>(x)];
    const auto& py = g.positions()[static_cast<std::size_t>(y)];
    int axis_hits = 0;
    for (std::size_t a = 0; a < px.size(); ++a) {
      const int diff = g.periodic()[a] ? mod(py[a] - px[a], g.extents()[a]) : py[a] - px[a];
      if (diff == 0) continue;
      if (diff != 1) return false;
      ++axis_hits;
    }
    return axis_hits == 1;
  };
  for (const auto& e : g.edges()) {
    int owner = std::min(e.x, e.y);
    if (g.has_geometry()) {
      const bool fwd_x = forward_from(e.x, e.y);
      const bool fwd_y = forward_from(e.y, e.x);
      if (fwd_x && !fwd_y) owner = e.x;
      if (fwd_y && !fwd_x) owner = e.y;
    }
    d.cell_of_edge.push_back(d.cell_of_site[static_cast<std::size_t>(owner)]);
  }
  for (std::size_t c = 0; c < d.cells.size(); ++c) {
    auto& support = d.cells[c].support;
    support = d.cells[c].members;
    for (std::size_t k = 0; k < g.edges().size(); ++k) {
      if (d.cell_of_edge[k] != static_cast<int>(c)) continue;
      support.push_back(g.edges()[k].x);
      support.push_back(g.edges()[k].y);
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
  }
  return d;
}

InversionMap inversion(const LatticeGraph& g, int center) {
  if (!g.has_geometry()) throw SymmetryError(g.name() + " has no coordinates to invert");
  if (center < 0 || center >= g.num_sites()) throw SymmetryError("inversion centre out of range");
  const auto& c = g.positions()[static_cast<std::size_t>(center)];
  InversionMap inv{center, std::vector<int>(static_cast<std::size_t>(g.num_sites()))};
  for (int x = 0; x < g.num_sites(); ++x) {
    auto p = g.positions()[static_cast<std::size_t>(x)];
    for (std::size_t a = 0; a < p.size(); ++a) {
      p[a] = 2 * c[a] - p[a];
      if (g.periodic()[a]) {
        p[a] = mod(p[a], g.extents()[a]);
      } else if (p[a] < 0 || p[a] >= g.extents()[a]) {
        throw SymmetryError(g.name() + " is not symmetric about site " + std::to_string(center));
      }
    }
    const auto image = g.site_at(p);
    if (!image) throw SymmetryError(g.name() + " is not symmetric about site " + std::to_string(center));
    inv.permutation[static_cast<std::size_t>(x)] = *image;
  }
  for (int x = 0; x < g.num_sites(); ++x) {
    if (inv(inv(x)) != x || g.sublattice(inv(x)) != g.sublattice(x))
      throw SymmetryError("inversion about site " + std::to_string(center) + " is inconsistent");
  }
  std::map<std::pair<int, int>, double> bonds;
  for (const auto& e : g.edges()) bonds[{e.x, e.y}] = e.t;
  for (const auto& e : g.edges()) {
    const int a = inv(e.x), b = inv(e.y);
    const auto it = bonds.find({std::min(a, b), std::max(a, b)});
    if (it == bonds.end() || it->second != e.t)
      throw SymmetryError("inversion about site " + std::to_string(center) + " does not preserve bonds");
  }
  return inv;
}

}  // namespace ahm
