// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "oracle/compare.hpp"

#include "ahm/excitations.hpp"
#include "ahm/observables.hpp"
#include "ahm/spectra.hpp"
#include "unit/helpers.hpp"

using namespace ahm;

namespace {

struct Outcome {
  bool pass = true;
  std::size_t rows = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string detail;
  std::vector<std::string> failures;

  void add(const ReportRow& r) {
    ++rows;
    worst_margin = std::min(worst_margin, r.margin + r.tolerance);
    if (!r.pass) {
      pass = false;
      failures.push_back(r.claim_id + " [" + r.lattice + "; " + r.params + "] lhs=" + std::to_string(r.lhs) +
                         " rhs=" + std::to_string(r.rhs) + (r.note.empty() ? "" : " (" + r.note + ")"));
    }
  }
  void add(const Report& rows_in, const std::function<bool(const ReportRow&)>& keep = {}) {
    for (const auto& r : rows_in)
      if (!keep || keep(r)) add(r);
  }
  void expect(bool ok, const std::string& what) {
    ++rows;
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

ModelParams params(double t, double u, double mu = 0.0) {
  ModelParams p;
  p.t = t;
  p.U = u;
  p.mu = mu;
  return p;
}

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < budget_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("criterion %2d %-4s %s: checks=%zu worst_margin=%.3e time=%.2fs (limit %.0fs)%s%s\n", id,
              ok ? "PASS" : "FAIL", name, o.rows, o.worst_margin, secs, budget_s, o.detail.empty() ? "" : " ",
              o.detail.c_str());
  if (!in_time) std::printf("    over time budget\n");
  for (const auto& f : o.failures) std::printf("    failed: %s\n", f.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "operator algebra suite", 10, [] {
    Outcome o;
    for (const auto& g : {build_chain(4, true), build_star(3)}) {
      const auto p = params(1, 4);
      o.add(verify_identities(g, p), [](const ReportRow& r) {
        return !starts_with(r.claim_id, "shiba-") && r.claim_id != "particle-hole-invariance";
      });
      o.add(excitation_identities(g, p));
    }
    return o;
  });

  criterion(2, "Shiba transform suite", 10, [] {
    Outcome o;
    for (const auto& g : {build_chain(2, false), build_chain(3, false), build_chain(4, true), build_star(3)})
      o.add(verify_identities(g, params(1, 3)), [](const ReportRow& r) { return starts_with(r.claim_id, "shiba-"); });
    return o;
  });

  const std::vector<double> betas{0.5, 1.0, 5.0};
  const std::vector<std::pair<double, double>> couplings{{1, 2}, {1, 4}};

  criterion(3, "half filling at mu = 0", 30, [&] {
    Outcome o;
    for (const auto& g : {build_chain(2, false), build_chain(4, true)})
      for (auto [t, u] : couplings)
        for (double b : betas)
          o.add(thermal_checks(g, params(t, u), b), [](const ReportRow& r) { return r.claim_id == "half-filling"; });
    o.detail = "tol 1e-10";
    return o;
  });

  criterion(4, "pairing correlation positivity", 30, [&] {
    Outcome o;
    for (const auto& g : {build_chain(2, false), build_chain(4, true)})
      for (auto [t, u] : couplings)
        for (double b : betas)
          o.add(thermal_checks(g, params(t, u), b),
                [](const ReportRow& r) { return r.claim_id == "pairing-positivity"; });
    o.detail = "tol 1e-12";
    return o;
  });

  criterion(5, "bound chain and parity lemma", 60, [] {
    Outcome o;
    CheckOptions opt;
    opt.inequality_tol = 1e-10;
    for (const auto& g : {build_chain(2, false), build_chain(4, true), build_star(3)})
      for (double b : {1.0, 2.0}) {
        o.add(verify_bound_chain(g, params(1, 2), b, opt));
        o.add(verify_parity_lemma(g, params(1, 2), b, opt));
      }
    return o;
  });

  criterion(6, "Lieb ground states", 120, [] {
    Outcome o;
    std::mt19937_64 rng(20240531);
    std::uniform_real_distribution<double> u(1.0, 8.0);
    std::uniform_int_distribution<int> size(2, 6);
    for (int i = 0; i < 20; ++i) {
      const auto g = testing::random_bipartite(size(rng), rng);
      std::uniform_int_distribution<int> half(1, g.num_sites());
      const int n_particles = 2 * half(rng);
      o.add(lieb_ground_check(g, params(1, u(rng)), n_particles), [](const ReportRow& r) {
        return r.claim_id == "lieb-unique" || r.claim_id == "lieb-singlet";
      });
    }
    o.add(lieb_ground_check(build_star(3), params(1, 4), 4), [](const ReportRow& r) {
      return r.claim_id == "lieb-repulsive-spin" || r.claim_id == "lieb-repulsive-degeneracy";
    });
    o.detail = "20 random graphs + star(3) repulsive multiplet";
    return o;
  });

  criterion(7, "superconducting long-range order", 60, [] {
    Outcome o;
    for (int leaves : {3, 5})
      for (double u : {2.0, 4.0})
        o.add(verify_lro(build_star(leaves), params(1, u)), [](const ReportRow& r) { return r.claim_id == "lro-bound"; });
    return o;
  });

  criterion(8, "spontaneous magnetization", 60, [] {
    Outcome o;
    o.add(magnetization_scan(build_star(3), params(1, 2), {0.5, 1.0, 2.0}), [](const ReportRow& r) {
      return r.claim_id == "magnetization-bound" || r.claim_id == "trial-state-magnetization";
    });
    return o;
  });

  criterion(9, "excitation gap at low density", 60, [] {
    Outcome o;
    const auto g = build_chain(10, true);
    const auto p = params(0.01, 1.0, 0.5);
    for (const auto& alpha : {ExcitationCoefficients::delta(10, 0), ExcitationCoefficients::two_site(10, 0, 1)}) {
      const auto r = gap_check(g, p, 2, alpha);
      o.expect(r.gamma_tilde == 4.0, "gamma~ = 4");
      o.add(r.rows, [](const ReportRow& row) {
        return row.claim_id == "gap-norm-condition" || row.claim_id == "gap-tight-bound" ||
               row.claim_id == "gap-loose-bound";
      });
    }
    return o;
  });

  criterion(10, "sublattice density bound", 600, [] {
    Outcome o;
    CheckOptions opt;
    opt.solver.allow_large = true;
    o.add(sublattice_density_check(build_lieb2d(2, 2, true), params(1, 2), 2, ExcitationCoefficients::delta(12, 0),
                                   opt));
    o.add(sublattice_density_check(build_star(3), params(1, 2), 2, ExcitationCoefficients::delta(4, 1), opt));
    o.detail = "lieb2d(2x2) and star(3)";
    return o;
  });

  criterion(11, "gapless pair excitations", 120, [] {
    Outcome o;
    const auto tr = dispersion_trend({4, 6, 8}, params(1, 4));
    o.add(tr.rows, [](const ReportRow& r) {
      return r.claim_id == "dispersion-zero" || r.claim_id == "dispersion-guard" ||
             r.claim_id == "dispersion-norm-identity" || r.claim_id == "dispersion-linear-constant" ||
             r.claim_id == "dispersion-quadratic-constant";
    });
    char buf[160];
    std::string d;
    for (const auto& t : tr.table) {
      std::snprintf(buf, sizeof buf, "L=%d N=%d dE/p=%.4f dE/p^2=%.4f; ", t.length, t.n_particles, t.linear_ratio,
                    t.quadratic_ratio);
      d += buf;
    }
    o.detail = d;
    return o;
  });

  criterion(12, "dense oracle equivalence", 600, [] {
    Outcome o;
    double worst = 0.0;
    for (const auto& g : {build_chain(2, false), build_chain(3, false), build_chain(4, false), build_chain(4, true),
                          build_star(3), build_hypercube({2, 2}, false)})
      for (const auto& p : {params(1, 2), params(0.6, 4, 0.3), params(1.3, 1, 1.1)}) {
        const auto c = oracle::compare(g, p, 1.0);
        worst = std::max(worst, c.worst());
        o.expect(c.worst() <= 1e-9, g.name() + " " + describe(p) + " differs by " + std::to_string(c.worst()));
      }
    o.detail = "max difference " + std::to_string(worst);
    return o;
  });

  criterion(13, "Krylov ground state performance", 60, [] {
    Outcome o;
    const auto g = build_chain(10, true);
    const auto basis = Basis::sector(10, 5, 5);
    const auto h = build_hamiltonian(g, params(1, 4), basis);
    SolverOptions opt;
    opt.krylov_tol = 1e-12;
    const auto gm = ground_state(h, 1, opt);
    const auto& v = gm.states.front();
    const double res = (h.apply(v.amplitudes) - gm.energy * v.amplitudes).norm() / v.amplitudes.norm();
    o.expect(basis->dim() == 63504, "dimension 63504");
    o.expect(gm.krylov, "Krylov path used");
    o.expect(res <= 1e-10, "residual " + std::to_string(res));
    char buf[96];
    std::snprintf(buf, sizeof buf, "E0=%.12f residual=%.2e", gm.energy, res);
    o.detail = buf;
    return o;
  });

  std::printf("%s: %d criterion failure(s)\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
