#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

#include "ahm/errors.hpp"

namespace ahm {

struct LanczosOptions {
  int nev = 1;                // wanted lowest eigenpairs
  int basis_size = 0;         // Krylov subspace size; 0 picks max(2 nev + 20, 40)
  double tol = 1e-10;         // residual target ||Av - theta v|| <= tol (1 + |theta|)
  int max_restarts = 1000;
  unsigned long long seed = 20240531ULL;
};

template <typename Scalar>
struct LanczosResult {
  Eigen::VectorXd values;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
  Eigen::VectorXd residuals;  // true residual norms ||A v - theta v||
  int restarts = 0;
  int matvecs = 0;
};

namespace detail {

template <typename Scalar>
void fill_random(Eigen::Ref<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> v, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if constexpr (std::is_same_v<Scalar, double>) {
      v[i] = u(rng);
    } else {
      const double re = u(rng);
      v[i] = Scalar(re, u(rng));
    }
  }
}

}  // namespace detail

/// Lowest eigenpairs of a Hermitian operator by thick-restart Lanczos
/// (Krylov-Schur for the symmetric case) with full reorthogonalization.
/// `apply(x, y)` must compute y = A x. The start vector is drawn from a
/// seeded generator, so results are reproducible.
template <typename Scalar, typename MatVec>
LanczosResult<Scalar> lanczos_lowest(MatVec&& apply, Eigen::Index n, const LanczosOptions& opt) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  const int nev = static_cast<int>(std::min<Eigen::Index>(opt.nev, n));
  int m = opt.basis_size > 0 ? opt.basis_size : std::max(2 * nev + 20, 40);
  m = static_cast<int>(std::min<Eigen::Index>(m, n));
  if (nev < 1) throw ConfigError("Lanczos needs at least one wanted eigenpair");
  if (m <= nev && m < n) m = nev + 1;

  std::mt19937_64 rng(opt.seed);
  Mat V = Mat::Zero(n, m + 1);
  Mat H = Mat::Zero(m + 1, m);
  detail::fill_random<Scalar>(V.col(0), rng);
  V.col(0).normalize();

  LanczosResult<Scalar> out;
  Vec w(n);
  int kept = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    for (int j = kept; j < m; ++j) {
      apply(V.col(j), w);
      ++out.matvecs;
      // Classical Gram-Schmidt applied twice.
      Vec h = V.leftCols(j + 1).adjoint() * w;
      w.noalias() -= V.leftCols(j + 1) * h;
      const Vec h2 = V.leftCols(j + 1).adjoint() * w;
      w.noalias() -= V.leftCols(j + 1) * h2;
      h += h2;
      H.col(j).head(j + 1) = h;
      const double beta = w.norm();
      const double scale = std::max(1.0, std::abs(h[j]));
      if (beta > 1e-12 * scale) {
        H(j + 1, j) = beta;
        V.col(j + 1) = w / beta;
      } else {
        // Invariant subspace: continue with a fresh orthogonal direction.
        H(j + 1, j) = Scalar(0);
        if (j + 1 < n) {
          Vec r(n);
          detail::fill_random<Scalar>(r, rng);
          for (int pass = 0; pass < 2; ++pass) r -= V.leftCols(j + 1) * (V.leftCols(j + 1).adjoint() * r);
          V.col(j + 1) = r.normalized();
        } else {
          V.col(j + 1).setZero();
        }
      }
    }

    Mat T = H.topRows(m);
    T = (0.5 * (T + T.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(T);
    const Eigen::VectorXd theta = es.eigenvalues();
    const Mat& Y = es.eigenvectors();
    const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> b = H.row(m) * Y;

    bool converged = true;
    double worst = 0.0;
    for (int i = 0; i < nev; ++i) {
      const double r = std::abs(b[i]);
      worst = std::max(worst, r / (1.0 + std::abs(theta[i])));
      if (r > opt.tol * (1.0 + std::abs(theta[i]))) converged = false;
    }
    best = std::min(best, worst);
    out.restarts = restart;
    if (converged || m >= n) {
      out.values = theta.head(nev);
      out.vectors = V.leftCols(m) * Y.leftCols(nev);
      out.residuals.resize(nev);
      for (int i = 0; i < nev; ++i) {
        out.vectors.col(i).normalize();
        Vec av(n);
        apply(out.vectors.col(i), av);
        ++out.matvecs;
        out.residuals[i] = (av - out.values[i] * out.vectors.col(i)).norm();
      }
      return out;
    }

    // Thick restart: keep the lowest Ritz vectors and the residual direction.
    const int keep = std::min(m - 1, nev + (m - nev) / 2);
    Mat Vk = V.leftCols(m) * Y.leftCols(keep);
    const Vec next = V.col(m);
    V.leftCols(keep) = Vk;
    V.col(keep) = next;
    H.setZero();
    for (int i = 0; i < keep; ++i) {
      H(i, i) = Scalar(theta[i]);
      H(keep, i) = b[i];
    }
    kept = keep;
  }
  throw ConvergenceError("Lanczos did not converge within " + std::to_string(opt.max_restarts) +
                             " restarts (best scaled residual " + std::to_string(best) + ")",
                         best);
}

}  // namespace ahm
