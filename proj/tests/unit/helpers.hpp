#pragma once

#include <random>
#include <string>
#include <vector>

#include "ahm/fock.hpp"
#include "ahm/lattice.hpp"
#include "oracle/dense_oracle.hpp"

namespace testing {

/// Dense word-indexed matrix of an operator defined on the full basis.
inline oracle::Mat to_words(const ahm::SparseOperator& op) {
  const auto& dom = *op.domain();
  const auto& cod = *op.codomain();
  const Eigen::Index dim = Eigen::Index{1} << (2 * dom.num_sites());
  oracle::Mat out = oracle::Mat::Zero(dim, dim);
  for (int k = 0; k < op.matrix().outerSize(); ++k)
    for (ahm::SparseMatrix::InnerIterator it(op.matrix(), k); it; ++it)
      out(static_cast<Eigen::Index>(cod.config(it.row())), static_cast<Eigen::Index>(dom.config(it.col()))) =
          it.value();
  return out;
}

/// Connected bipartite graph on n sites with random positive amplitudes.
inline ahm::LatticeGraph random_bipartite(int n, std::mt19937_64& rng) {
  std::vector<ahm::Sublattice> sub{ahm::Sublattice::A, ahm::Sublattice::B};
  std::bernoulli_distribution coin(0.5), extra(0.3);
  std::uniform_real_distribution<double> amp(0.5, 1.5);
  for (int x = 2; x < n; ++x) sub.push_back(coin(rng) ? ahm::Sublattice::A : ahm::Sublattice::B);
  std::vector<ahm::Edge> edges{{0, 1, amp(rng)}};
  for (int x = 2; x < n; ++x) {
    std::vector<int> other;
    for (int y = 0; y < x; ++y)
      if (sub[static_cast<std::size_t>(y)] != sub[static_cast<std::size_t>(x)]) other.push_back(y);
    std::uniform_int_distribution<std::size_t> pick(0, other.size() - 1);
    const int y = other[pick(rng)];
    edges.push_back({y, x, amp(rng)});
    for (int z : other)
      if (z != y && extra(rng)) edges.push_back({z, x, amp(rng)});
  }
  return ahm::LatticeGraph::custom(n, sub, edges, "random" + std::to_string(n));
}

}  // namespace testing
