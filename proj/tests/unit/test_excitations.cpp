#include <cmath>
#include <numbers>

#include "doctest.h"

#include "ahm/errors.hpp"
#include "ahm/excitations.hpp"

using namespace ahm;

namespace {

void require_all(const Report& rows) {
  for (const auto& r : rows) {
    INFO(r.claim_id << " " << r.params << " lhs=" << r.lhs << " rhs=" << r.rhs << " " << r.note);
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

TEST_CASE("coefficients") {
  auto c = ExcitationCoefficients::two_site(4, 0, 1);
  CHECK(c.norm_squared() == doctest::Approx(1.0));
  CHECK(std::abs(c.alpha[0]) == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS(ExcitationCoefficients::two_site(4, 1, 1), ConfigError);
  const auto r1 = ExcitationCoefficients::random(5, 3), r2 = ExcitationCoefficients::random(5, 3);
  CHECK(r1.alpha == r2.alpha);
  ExcitationCoefficients z;
  z.alpha.assign(3, cplx{});
  CHECK_THROWS_AS(z.normalize(), ConfigError);
}

TEST_CASE("alpha tilde sums neighbour amplitudes") {
  const auto g = build_chain(4, true);
  const auto d = ExcitationCoefficients::delta(4, 0);
  const auto at = alpha_tilde(g, params(1, 1), d.alpha);
  CHECK(std::abs(at[1] - 1.0) < 1e-15);
  CHECK(std::abs(at[3] - 1.0) < 1e-15);
  CHECK(std::abs(at[0]) < 1e-15);
  CHECK(std::abs(at[2]) < 1e-15);
}

TEST_CASE("gap bounds on a weakly hopping ring") {
  const auto g = build_chain(6, true);
  const auto p = params(0.05, 1.0, 0.5);
  const auto r = gap_check(g, p, 2, ExcitationCoefficients::delta(6, 0));
  CHECK(r.hypothesis_met);
  CHECK(r.norm_condition == doctest::Approx(1.0 - 1.0 / 6.0).epsilon(1e-9));
  CHECK(r.gamma_tilde == doctest::Approx(4.0));
  require_all(r.rows);
  require_all(gap_check(g, p, 2, ExcitationCoefficients::two_site(6, 0, 1, 1.0, -1.0)).rows);
  CHECK_THROWS_AS(gap_check(g, p, 3, ExcitationCoefficients::delta(6, 0)), ConfigError);
}

TEST_CASE("sublattice density bound on a star") {
  require_all(sublattice_density_check(build_star(3), params(1, 2), 2, ExcitationCoefficients::delta(4, 1)));
  CHECK_THROWS_AS(sublattice_density_check(build_chain(4, true), params(1, 2), 2, ExcitationCoefficients::delta(4, 0)),
                  ConfigError);
}

TEST_CASE("pair dispersion vanishes at zero momentum") {
  const auto g = build_chain(6, true);
  const auto r = pairing_dispersion(g, params(1, 4), 2, {{0.0}, {2 * std::numbers::pi / 6}, {std::numbers::pi}});
  REQUIRE(r.points.size() == 3);
  CHECK(std::abs(r.points[0].delta_e) <= 1e-10);
  CHECK(r.inversion);
  for (const auto& pt : r.points) {
    CHECK(pt.delta_e >= r.pair_threshold - 1e-10);
    CHECK(pt.denominator - pt.denominator_conj == doctest::Approx(4.0));
    CHECK(pt.local_sum == doctest::Approx(pt.double_commutator).epsilon(1e-9));
  }
  // at mu = 0 adding a pair lowers the energy, so Delta E(pi) may dip below zero
  CHECK(r.pair_threshold < 0.0);
  require_all(r.rows);
}

TEST_CASE("dispersion needs a nonvanishing pair state") {
  const auto g = build_chain(4, true);
  CHECK_THROWS_AS(pairing_dispersion(g, params(1, 4), 8, {{0.0}}), ConfigError);
}

TEST_CASE("quarter filling and constants") {
  CHECK(quarter_filling_even(4) == 2);
  CHECK(quarter_filling_even(6) == 2);
  CHECK(quarter_filling_even(8) == 4);
  CHECK(linear_constant(params(0.5, 1)) == doctest::Approx(16.0));
  CHECK(quadratic_constant(params(0.5, 1)) == doctest::Approx(8.0));
}

TEST_CASE("excitation identities") {
  require_all(excitation_identities(build_chain(4, true), params(1, 3)));
  require_all(excitation_identities(build_star(3), params(0.7, 2, 0.4)));
}
