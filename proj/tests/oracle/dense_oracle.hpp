#pragma once

// Naive reference: dense 4^L matrices from Kronecker products of 2x2 mode
// matrices with Jordan-Wigner strings. Row index = occupation word.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ahm/lattice.hpp"
#include "ahm/model.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

class Fock {
 public:
  explicit Fock(int sites) : sites_(sites), modes_(2 * sites) {}

  int sites() const { return sites_; }
  Eigen::Index dim() const { return Eigen::Index{1} << modes_; }
  int mode(int site, bool down) const { return down ? sites_ + site : site; }

  /// Mode m is the m-th least significant factor; the string of Z acts on
  /// the lower modes.
  Mat c(int m) const {
    Mat a = Mat::Zero(2, 2);
    a(0, 1) = 1.0;
    Mat z = Mat::Identity(2, 2);
    z(1, 1) = -1.0;
    const Mat id = Mat::Identity(2, 2);
    Mat out = Mat::Identity(1, 1);
    for (int k = modes_ - 1; k >= 0; --k) out = kron(out, k > m ? id : (k == m ? a : z));
    return out;
  }
  Mat cdag(int m) const { return c(m).adjoint(); }
  Mat n(int m) const { return cdag(m) * c(m); }
  Mat id() const { return Mat::Identity(dim(), dim()); }

  Mat hamiltonian(const ahm::LatticeGraph& g, const ahm::ModelParams& p) const {
    Mat h = Mat::Zero(dim(), dim());
    for (const auto& e : g.edges())
      for (bool down : {false, true}) {
        const Mat hop = cdag(mode(e.x, down)) * c(mode(e.y, down));
        h += p.hopping(e) * (hop + hop.adjoint());
      }
    for (int x = 0; x < sites_; ++x) {
      const Mat a = n(mode(x, false)) - 0.5 * id();
      const Mat b = n(mode(x, true)) - 0.5 * id();
      h -= p.coupling(x) * a * b;
      h += p.mu * (n(mode(x, false)) + n(mode(x, true)));
    }
    return h;
  }

  /// Restriction to the words whose (n_up, n_down) satisfy the predicate.
  template <class Pred>
  std::vector<Eigen::Index> words(Pred pred) const {
    std::vector<Eigen::Index> out;
    for (Eigen::Index w = 0; w < dim(); ++w) {
      int nu = 0, nd = 0;
      for (int m = 0; m < sites_; ++m) {
        nu += (w >> m) & 1;
        nd += (w >> (sites_ + m)) & 1;
      }
      if (pred(nu, nd)) out.push_back(w);
    }
    return out;
  }

 private:
  int sites_;
  int modes_;
};

inline Mat restrict(const Mat& m, const std::vector<Eigen::Index>& idx) {
  Mat out(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(idx[i], idx[j]);
  return out;
}

/// Gibbs expectation Tr(op e^{-beta h}) / Tr e^{-beta h}.
inline cplx thermal(const Mat& h, const Mat& op, double beta) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXd w = (-beta * (es.eigenvalues().array() - es.eigenvalues().minCoeff())).exp();
  const Mat rho = es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  return (op * rho).trace() / w.sum();
}

inline double ground_energy(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

}  // namespace oracle
