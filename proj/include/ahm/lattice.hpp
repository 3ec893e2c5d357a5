#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ahm {

enum class Sublattice { A, B };

struct Edge {
  int x;
  int y;
  double t;  // base amplitude, later scaled by ModelParams::t
};

/// Finite bipartite graph. Edges are unordered, unique (parallel bonds
/// produced by small periodic systems are merged by summing amplitudes)
/// and always connect an A site to a B site.
class LatticeGraph {
 public:
  /// Validating constructor for an explicit graph. Duplicate edges are
  /// summed; a same-sublattice edge throws BipartitenessError, and a graph
  /// that is not connected through nonzero hoppings throws LatticeError.
  static LatticeGraph custom(int num_sites, std::vector<Sublattice> sublattice,
                             std::vector<Edge> edges, std::string name = "custom");

  int num_sites() const { return static_cast<int>(sublattice_.size()); }
  Sublattice sublattice(int x) const { return sublattice_.at(static_cast<std::size_t>(x)); }
  const std::vector<Sublattice>& sublattices() const { return sublattice_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& name() const { return name_; }

  int count_a() const;
  int count_b() const;
  /// |Λ_B| / |Λ|.
  double b_fraction() const { return static_cast<double>(count_b()) / num_sites(); }
  /// Target repulsive ground-state spin ||Λ_A| - |Λ_B|| / 2.
  double lieb_spin() const;

  /// Neighbours of x with the bond amplitude.
  std::vector<std::pair<int, double>> neighbors(int x) const;
  int coordination(int x) const { return static_cast<int>(neighbors(x).size()); }
  int max_coordination() const;
  double max_abs_hopping() const;

  // Geometry; empty for graphs without coordinates (stars, custom).
  bool has_geometry() const { return !positions_.empty(); }
  const std::vector<std::vector<int>>& positions() const { return positions_; }
  /// Coordinate period per axis (positions live in [0, extent)).
  const std::vector<int>& extents() const { return extents_; }
  const std::vector<bool>& periodic() const { return periodic_; }
  /// Translation step per axis in coordinate units (1 for hypercubes,
  /// 2 for the Lieb lattice whose coordinates live on a doubled grid).
  const std::vector<int>& cell_step() const { return cell_step_; }
  /// Site at the given coordinate, if any.
  std::optional<int> site_at(const std::vector<int>& pos) const;

  /// Unit cells recorded by the generator (empty for graphs without them).
  const std::vector<std::vector<int>>& cells() const { return cells_; }

 private:
  friend LatticeGraph build_chain(int, bool);
  friend LatticeGraph build_hypercube(const std::vector<int>&, bool);
  friend LatticeGraph build_lieb2d(int, int, bool);

  std::vector<Sublattice> sublattice_;
  std::vector<Edge> edges_;
  std::string name_;
  std::vector<std::vector<int>> positions_;
  std::vector<int> extents_;
  std::vector<bool> periodic_;
  std::vector<int> cell_step_;
  std::vector<std::vector<int>> cells_;
};

/// Open path or ring of L sites with alternating A/B labels.
LatticeGraph build_chain(int length, bool pbc);
/// K_{1,k}: centre (site 0) in B, k leaves in A.
LatticeGraph build_star(int leaves);
/// Hypercubic lattice with the given side lengths.
LatticeGraph build_hypercube(const std::vector<int>& dims, bool pbc);
/// 2D Lieb lattice: one corner (B) and two edge-centre (A) sites per cell.
LatticeGraph build_lieb2d(int lx, int ly, bool pbc);

/// +1 on A, -1 on B.
inline int eta(const LatticeGraph& g, int x) { return g.sublattice(x) == Sublattice::A ? 1 : -1; }

struct UnitCellDecomposition {
  struct Cell {
    int anchor;
    std::vector<int> members;
    std::vector<int> support;  // sites touched by the terms this cell owns
  };
  std::vector<Cell> cells;
  std::vector<int> cell_of_site;
  std::vector<int> cell_of_edge;  // parallel to LatticeGraph::edges()
};

/// Cell partition plus term ownership. On-site terms belong to their own
/// cell. A bond belongs to the endpoint it leaves in the forward
/// translation direction when the graph has geometry, otherwise to its
/// smaller endpoint.
UnitCellDecomposition unit_cells(const LatticeGraph& g);

struct InversionMap {
  int center;
  std::vector<int> permutation;
  int operator()(int x) const { return permutation.at(static_cast<std::size_t>(x)); }
};

/// Point inversion x0 + d -> x0 - d. Throws SymmetryError when the graph
/// has no geometry or is not symmetric about x0.
InversionMap inversion(const LatticeGraph& g, int center);

}  // namespace ahm
