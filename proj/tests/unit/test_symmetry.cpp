#include <numbers>

#include "doctest.h"

#include "ahm/model.hpp"
#include "ahm/symmetry.hpp"

using namespace ahm;

TEST_CASE("Shiba unitary is unitary and maps c_d to eta c_d^dagger") {
  const auto g = build_star(3);
  const int n = g.num_sites();
  const auto full = Basis::restricted(n, Restriction::full());
  const auto u = shiba_unitary(g, full);
  CHECK(max_abs_diff(u.adjoint() * u, identity(u.domain())) < 1e-14);
  for (int x = 0; x < n; ++x) {
    const auto c = annihilation(x, Spin::Down, full);
    const auto lhs = shiba_conjugate(g, to_operator(cann(x, Spin::Down, n), full, full));
    CHECK(max_abs_diff(lhs, eta(g, x) * to_operator(cdag(x, Spin::Down, n), full, full)) < 1e-14);
    const auto up = shiba_conjugate(g, to_operator(cann(x, Spin::Up, n), full, full));
    CHECK(max_abs_diff(up, to_operator(cann(x, Spin::Up, n), full, full)) < 1e-14);
    (void)c;
  }
}

TEST_CASE("Shiba transformation of sectors") {
  const auto g = build_chain(4, true);
  const auto cod = Basis::sector(4, 2, 1);
  const auto u = shiba_unitary(g, cod);
  REQUIRE(u.domain()->sectors().size() == 1);
  CHECK(u.domain()->sectors()[0].n_up == 2);
  CHECK(u.domain()->sectors()[0].n_down == 3);
}

TEST_CASE("U_theta(pi) on three particles") {
  const auto b = Basis::sector(2, 2, 1);
  const Eigen::MatrixXcd u = u_theta(b, std::numbers::pi).dense();
  for (Eigen::Index i = 0; i < b->dim(); ++i) {
    CHECK(u(i, i).real() == doctest::Approx(-1.0));
    CHECK(std::abs(u(i, i).imag()) < 1e-15);
  }
}

TEST_CASE("zero-momentum eta operator is the sum of local pairs") {
  const auto g = build_chain(4, true);
  const auto full = Basis::restricted(4, Restriction::full());
  Expr sum;
  for (int x = 0; x < 4; ++x) sum += eta_pair_expr(g, x);
  const auto ops = eta_ops(g, full, {0.0});
  CHECK(max_abs_diff(ops.o_eta, to_operator(sum, full, full)) < 1e-15);
  CHECK_THROWS(momentum_phase(g, {1.0}, 1));
}

TEST_CASE("eta operators commute with H at mu = 0 and p = 0") {
  const auto g = build_chain(4, true);
  ModelParams p;
  const auto full = Basis::restricted(4, Restriction::full());
  const auto h = build_hamiltonian(g, p, full);
  const auto o = eta_ops(g, full, {0.0}).o_eta;
  CHECK(max_abs(commutator(h, o)) < 1e-13);
  p.mu = 0.5;
  const auto hmu = build_hamiltonian(g, p, full);
  CHECK(max_abs(commutator(hmu, o)) > 0.5);
}

TEST_CASE("total spin of a singlet and a triplet") {
  const auto g = build_chain(2, false);
  const auto b = Basis::sector(2, 1, 1);
  const auto s2 = spin_ops(g, b).s_squared.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s2);
  // two doublons and the singlet give 0, the triplet m=0 gives 2
  CHECK(es.eigenvalues()[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(es.eigenvalues()[3] == doctest::Approx(2.0));
}
