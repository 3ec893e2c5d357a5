#include <random>

#include "doctest.h"
#include "helpers.hpp"

#include "ahm/errors.hpp"
#include "ahm/observables.hpp"
#include "ahm/spectra.hpp"

using namespace ahm;

namespace {

void require_all(const Report& rows) {
  for (const auto& r : rows) {
    INFO(r.claim_id << " " << r.lattice << " " << r.params << " lhs=" << r.lhs << " rhs=" << r.rhs << " " << r.note);
    CHECK(r.pass);
  }
}

ModelParams params(double t, double u, double mu = 0.0) {
  ModelParams p;
  p.t = t;
  p.U = u;
  p.mu = mu;
  return p;
}

}  // namespace

TEST_CASE("operator identities on small graphs") {
  require_all(verify_identities(build_chain(4, true), params(1, 4)));
  require_all(verify_identities(build_star(3), params(0.5, 2, 0.3)));
}

TEST_CASE("thermal checks") {
  for (double beta : {0.5, 5.0}) require_all(thermal_checks(build_chain(2, false), params(1, 2), beta));
  // away from mu = 0 the half-filling row is not emitted but positivity still holds
  for (const auto& r : thermal_checks(build_chain(4, true), params(1, 2, 0.5), 1.0))
    if (r.claim_id == "pairing-positivity") CHECK(r.pass);
}

TEST_CASE("bound chain and parity lemma") {
  require_all(verify_bound_chain(build_star(3), params(1, 2), 1.0));
  require_all(verify_parity_lemma(build_star(3), params(1, 2), 2.0));
  CHECK_THROWS_AS(verify_bound_chain(build_star(3), params(1, 2, 0.1), 1.0), ConfigError);
}

TEST_CASE("pairing correlations are real and nonnegative") {
  const auto g = build_chain(4, true);
  const auto full = Basis::restricted(4, Restriction::full());
  const auto h = build_hamiltonian(g, params(1, 3), full);
  const ThermalEnsemble ens(h, 2.0);
  const auto k = pairing_correlations(expectation_of(ens), g, full);
  CHECK(k.imag().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(k.real().minCoeff() >= -1e-12);
  CHECK((k - k.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("attractive fixed-N ground states are unique singlets on random graphs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(1.0, 8.0);
  for (int i = 0; i < 5; ++i) {
    const auto g = testing::random_bipartite(3 + i % 3, rng);
    require_all(lieb_ground_check(g, params(1, u(rng)), 2));
  }
}

TEST_CASE("long-range order and magnetization on star(3)") {
  require_all(verify_lro(build_star(3), params(1, 2)));
  require_all(magnetization_scan(build_star(3), params(1, 2), {0.5, 2.0}));
  CHECK_THROWS_AS(magnetization_scan(build_chain(4, true), params(1, 2), {1.0}), ConfigError);
}

TEST_CASE("order parameters") {
  const auto g = build_chain(2, false);
  const auto full = Basis::restricted(2, Restriction::full());
  const auto o = order_parameters(g, full);
  CHECK(is_hermitian(o.o_cdw, 1e-15));
  CHECK(is_hermitian(o.delta_rho, 1e-15));
  // O_super^dagger on the vacuum: (1/2)(pair on 0 + pair on 1)
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(full->dim());
  vac[*full->index_of(0)] = 1.0;
  const Eigen::VectorXcd v = o.o_super.adjoint().apply(vac);
  CHECK(v.norm() == doctest::Approx(std::sqrt(0.5)));
}
