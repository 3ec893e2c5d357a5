#include "doctest.h"

#include "oracle/compare.hpp"

using namespace ahm;

TEST_CASE("oracle ladder matrices anticommute") {
  const oracle::Fock f(2);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const oracle::Mat ac = f.c(a) * f.cdag(b) + f.cdag(b) * f.c(a);
      const oracle::Mat expect = a == b ? f.id() : oracle::Mat::Zero(16, 16);
      CHECK((ac - expect).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("library matches the dense oracle on small graphs") {
  ModelParams p;
  p.t = 0.8;
  p.U = 2.5;
  for (const auto& g : {build_chain(2, false), build_chain(3, false), build_chain(4, true), build_star(3)}) {
    for (double mu : {0.0, 0.35}) {
      p.mu = mu;
      const auto c = oracle::compare(g, p, 1.7);
      INFO(g.name() << " mu=" << mu);
      CHECK(c.operators < 1e-12);
      CHECK(c.energies < 1e-9);
      CHECK(c.thermal < 1e-9);
      CHECK(c.ground < 1e-9);
    }
  }
}
