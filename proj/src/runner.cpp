#include "ahm/runner.hpp"

#include <cmath>
#include <ostream>

#include "ahm/errors.hpp"
#include "ahm/excitations.hpp"
#include "ahm/report_writer.hpp"
#include "ahm/spectra.hpp"

namespace ahm {

namespace {

void append(Report& dst, Report src) {
  for (auto& r : src) dst.push_back(std::move(r));
}

ExcitationCoefficients coefficients(const AlphaSpec& a, int n) {
  if (a.kind == "random") return ExcitationCoefficients::random(n, a.seed);
  if (a.kind == "delta" && a.amplitudes[0] == 1.0) return ExcitationCoefficients::delta(n, a.sites[0]);
  ExcitationCoefficients c;
  c.alpha.assign(static_cast<std::size_t>(n), cplx{});
  for (std::size_t i = 0; i < a.sites.size(); ++i) c.alpha[static_cast<std::size_t>(a.sites[i])] += a.amplitudes[i];
  return c;
}

Report spectrum_rows(const LatticeGraph& g, const RunConfig& cfg, const CheckOptions& opt) {
  Stopwatch sw;
  const int n = g.num_sites();
  BasisPtr basis;
  if (cfg.task.sector) {
    basis = Basis::sector(n, cfg.task.sector->n_up, cfg.task.sector->n_down);
  } else {
    check_thermal_guard(n, opt.solver);
    basis = Basis::restricted(n, Restriction::full());
  }
  const auto h = build_hamiltonian(g, cfg.model, basis);
  struct Level {
    double e;
    Sector s;
  };
  std::vector<Level> levels;
  double worst = 0.0;
  bool krylov = false;
  for (const auto& block : coupled_blocks(h)) {
    const auto pairs = lowest_eigenpairs(h, block, cfg.task.states, opt.solver);
    krylov = krylov || pairs.krylov;
    const Sector s = basis->sectors()[block.front()];
    for (Eigen::Index k = 0; k < std::min<Eigen::Index>(pairs.size(), cfg.task.states); ++k) {
      levels.push_back({pairs.values[k], s});
      if (pairs.residuals.size() > k) worst = std::max(worst, pairs.residuals[k] / (1.0 + std::abs(pairs.values[k])));
    }
  }
  std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.e < b.e; });
  if (static_cast<int>(levels.size()) > cfg.task.states) levels.resize(static_cast<std::size_t>(cfg.task.states));
  Report rows;
  const std::string par = describe(cfg.model);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    auto r = equality_row("spectrum-level", g.name(), par,
                          "E_" + std::to_string(k) + " in sector (" + std::to_string(levels[k].s.n_up) + "," +
                              std::to_string(levels[k].s.n_down) + ")",
                          levels[k].e, levels[k].e, 0.0);
    rows.push_back(r);
  }
  rows.push_back(inequality_row("spectrum-residual", g.name(), par,
                                krylov ? "Krylov tolerance >= max |Hv - Ev|/(1+|E|)" : "1e-10 >= max |Hv - Ev|/(1+|E|)",
                                krylov ? opt.solver.krylov_tol : 1e-10, worst, 0.0));
  stamp(rows, 0, sw);
  return rows;
}

}  // namespace

Report execute(RunConfig& cfg, const LatticeGraph& g, std::ostream& log) {
  resolve_defaults(cfg, g);
  const auto opt = cfg.check_options();
  const auto& p = cfg.model;
  const auto& t = cfg.task;
  const int n = g.num_sites();
  Report rows;
  if (t.name == "verify-identities") {
    append(rows, verify_identities(g, p, opt));
    append(rows, excitation_identities(g, p, opt));
  } else if (t.name == "lro") {
    append(rows, verify_lro(g, p, opt));
  } else if (t.name == "magnetization") {
    append(rows, magnetization_scan(g, p, cfg.fields, opt));
  } else if (t.name == "gap") {
    append(rows, gap_check(g, p, *t.n_particles, coefficients(t.alpha, n), opt).rows);
    if (g.count_a() != g.count_b())
      append(rows, sublattice_density_check(g, p, *t.n_particles, coefficients(t.alpha, n), opt));
  } else if (t.name == "dispersion") {
    if (cfg.mu_explicit && p.mu != 0.0)
      log << "warning: dispersion with mu = " << p.mu << "; the gapless bounds assume mu = 0\n";
    if (!t.lengths.empty()) {
      append(rows, dispersion_trend(t.lengths, p, opt).rows);
    } else {
      append(rows, pairing_dispersion(g, p, *t.n_particles, t.p, opt).rows);
    }
  } else if (t.name == "thermal-scan") {
    check_thermal_guard(n, opt.solver);
    const bool chain_ok = p.mu == 0.0 && n % 2 == 0;
    if (!chain_ok) log << "warning: bound chain and parity lemma skipped (they need mu = 0 and even |L|)\n";
    for (double beta : t.beta) {
      append(rows, thermal_checks(g, p, beta, opt));
      if (chain_ok) {
        append(rows, verify_bound_chain(g, p, beta, opt));
        append(rows, verify_parity_lemma(g, p, beta, opt));
      }
    }
  } else if (t.name == "spectrum") {
    append(rows, spectrum_rows(g, cfg, opt));
  } else {
    throw ConfigError("unknown task " + t.name);
  }
  if (!cfg.output.timing)
    for (auto& r : rows) r.seconds = 0.0;
  return rows;
}

int run(RunConfig cfg, std::ostream& out, std::ostream& err) {
  Report rows;
  std::string content;
  try {
    const auto g = build_lattice(cfg.lattice);
    cfg.model.validate(g);
    rows = execute(cfg, g, err);
    content = cfg.output.format == "json" ? report_json(rows, cfg.to_json()) : to_csv(rows);
    if (cfg.output.format == "csv") {
      write_file(cfg.output.path + ".config.json", cfg.to_json().dump(2) + "\n");
    }
    write_file(cfg.output.path, content);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  int failed = 0;
  for (const auto& r : rows) {
    if (r.pass) continue;
    ++failed;
    out << "FAIL " << r.claim_id << " [" << r.lattice << "; " << r.params << "] " << r.quantity
        << ": lhs=" << format_number(r.lhs) << " rhs=" << format_number(r.rhs) << (r.note.empty() ? "" : " (")
        << r.note << (r.note.empty() ? "" : ")") << "\n";
  }
  for (const auto& r : rows)
    if (r.pass && !r.note.empty()) out << "note " << r.claim_id << ": " << r.note << "\n";
  out << rows.size() - static_cast<std::size_t>(failed) << "/" << rows.size() << " checks passed; report written to "
      << cfg.output.path << "\n";
  return failed ? 1 : 0;
}

int run_file(const std::string& config_path, std::ostream& out, std::ostream& err,
             const std::string& output_override) {
  RunConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (!output_override.empty()) cfg.output.path = output_override;
  return run(std::move(cfg), out, err);
}

}  // namespace ahm
