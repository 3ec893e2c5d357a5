#include "ahm/excitations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "ahm/errors.hpp"
#include "ahm/spectra.hpp"
#include "ahm/symmetry.hpp"

namespace ahm {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string momentum_label(const std::vector<double>& p) {
  std::string s = "p=(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + fmt("%.6g", p[i]);
  return s + ")";
}

double uniform_hopping(const LatticeGraph& g, const ModelParams& p) {
  if (!p.uniform(g)) throw ConfigError("this check needs uniform hopping and coupling");
  return p.hopping(g.edges().front());
}

struct FixedGround {
  BasisPtr basis;
  StateVector phi;
  double energy = 0.0;
  Sector sector{0, 0};
  GroundManifold manifold;
};

FixedGround fixed_ground(const LatticeGraph& g, const ModelParams& p, int n_particles, const SolverOptions& opt) {
  const int n = g.num_sites();
  if (n_particles <= 0 || n_particles % 2 != 0 || n_particles > 2 * n)
    throw ConfigError("particle number must be even and in (0, 2|L|]");
  FixedGround f;
  f.basis = Basis::restricted(n, Restriction::particle_number(n_particles));
  f.manifold = global_ground_manifold(build_hamiltonian(g, p, f.basis), opt);
  f.phi = f.manifold.states.front();
  f.energy = f.manifold.energy;
  if (f.manifold.sector_labels.front()) f.sector = *f.manifold.sector_labels.front();
  return f;
}

// Density of down spins per site in a normalized state.
std::vector<double> down_density(const LatticeGraph& g, const StateVector& phi) {
  std::vector<double> d;
  for (int x = 0; x < g.num_sites(); ++x) d.push_back(inner(phi, number_op(x, Spin::Down, phi.basis), phi).real());
  return d;
}

bool flat(const std::vector<double>& v, double tol) {
  if (v.empty()) return true;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo <= tol;
}

StateVector embed(const StateVector& s, const BasisPtr& target) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(target->dim());
  for (Eigen::Index i = 0; i < s.basis->dim(); ++i) {
    const auto row = target->index_of(s.basis->config(i));
    if (!row) throw BasisMismatch("state does not fit the target basis");
    v[*row] = s.amplitudes[i];
  }
  return {target, std::move(v)};
}

// Displacement x - x0 in cell units, using the nearest periodic image.
std::vector<double> displacement(const LatticeGraph& g, int x0, int x) {
  if (!g.has_geometry()) return {};
  std::vector<double> d;
  for (std::size_t a = 0; a < g.extents().size(); ++a) {
    int v = g.positions()[static_cast<std::size_t>(x)][a] - g.positions()[static_cast<std::size_t>(x0)][a];
    const int e = g.extents()[a];
    if (g.periodic()[a]) {
      v = ((v % e) + e) % e;
      if (2 * v > e) v -= e;
    }
    d.push_back(static_cast<double>(v) / g.cell_step()[a]);
  }
  return d;
}

double dot(const std::vector<double>& p, const std::vector<double>& d) {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(p.size(), d.size()); ++i) s += p[i] * d[i];
  return s;
}

double norm(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return std::sqrt(s);
}

BasisPtr pair_window(int n, int n_particles) {
  std::vector<Sector> sectors;
  for (int total : {n_particles - 2, n_particles, n_particles + 2})
    for (int a = 0; a <= n; ++a) {
      const int b = total - a;
      if (b >= 0 && b <= n) sectors.push_back({a, b});
    }
  return Basis::make(n, std::move(sectors));
}

// <Phi, [X, Y] Phi> from X+Phi, Y Phi, Y+Phi and X Phi.
cplx commutator_expectation(const Eigen::VectorXcd& xd_phi, const Eigen::VectorXcd& y_phi,
                            const Eigen::VectorXcd& yd_phi, const Eigen::VectorXcd& x_phi) {
  return xd_phi.dot(y_phi) - yd_phi.dot(x_phi);
}

}  // namespace

ExcitationCoefficients ExcitationCoefficients::delta(int num_sites, int site) {
  ExcitationCoefficients c;
  c.alpha.assign(static_cast<std::size_t>(num_sites), cplx{});
  c.alpha.at(static_cast<std::size_t>(site)) = 1.0;
  c.normalized = true;
  return c;
}

ExcitationCoefficients ExcitationCoefficients::two_site(int num_sites, int x, int y, cplx ax, cplx ay) {
  if (x == y) throw ConfigError("two-site excitation needs distinct sites");
  ExcitationCoefficients c;
  c.alpha.assign(static_cast<std::size_t>(num_sites), cplx{});
  c.alpha.at(static_cast<std::size_t>(x)) = ax;
  c.alpha.at(static_cast<std::size_t>(y)) = ay;
  c.normalize();
  return c;
}

ExcitationCoefficients ExcitationCoefficients::random(int num_sites, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ExcitationCoefficients c;
  for (int x = 0; x < num_sites; ++x) {
    const double re = g(rng);
    c.alpha.emplace_back(re, g(rng));
  }
  c.normalize();
  return c;
}

double ExcitationCoefficients::norm_squared() const {
  double s = 0.0;
  for (const auto& a : alpha) s += std::norm(a);
  return s;
}

bool ExcitationCoefficients::normalize() {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw ConfigError("excitation amplitudes are all zero");
  const bool changed = std::abs(n2 - 1.0) > 1e-14;
  if (changed)
    for (auto& a : alpha) a /= std::sqrt(n2);
  normalized = true;
  return !changed;
}

std::vector<cplx> alpha_tilde(const LatticeGraph& g, const ModelParams& p, const std::vector<cplx>& alpha) {
  if (static_cast<int>(alpha.size()) != g.num_sites()) throw ConfigError("alpha has the wrong length");
  std::vector<cplx> out(alpha.size());
  for (const auto& e : g.edges()) {
    const double w = p.t != 0.0 ? p.hopping(e) / p.t : e.t;
    out[static_cast<std::size_t>(e.y)] += w * alpha[static_cast<std::size_t>(e.x)];
    out[static_cast<std::size_t>(e.x)] += w * alpha[static_cast<std::size_t>(e.y)];
  }
  return out;
}

Expr excitation_expr(const std::vector<cplx>& alpha, int n) {
  Expr e;
  for (int x = 0; x < n; ++x)
    if (alpha[static_cast<std::size_t>(x)] != cplx{}) e += alpha[static_cast<std::size_t>(x)] * cdag(x, Spin::Up, n);
  return e;
}

Expr excitation_density_expr(const std::vector<cplx>& alpha, int n) {
  Expr e;
  for (int x = 0; x < n; ++x)
    if (alpha[static_cast<std::size_t>(x)] != cplx{})
      e += alpha[static_cast<std::size_t>(x)] * (cdag(x, Spin::Up, n) * number(x, Spin::Down, n));
  return e;
}

ExcitationOperators build_excitation(const LatticeGraph& g, const ModelParams& p, ExcitationCoefficients& c,
                                     const BasisPtr& domain) {
  const int n = g.num_sites();
  if (static_cast<int>(c.alpha.size()) != n) throw ConfigError("alpha has the wrong length");
  if (!c.normalized || std::abs(c.norm_squared() - 1.0) > 1e-14) c.normalize();
  auto a = to_operator(excitation_expr(c.alpha, n), domain);
  const BasisPtr cod = a.codomain();
  auto at = to_operator_projected(excitation_expr(alpha_tilde(g, p, c.alpha), n), domain, cod);
  auto ad = to_operator_projected(excitation_density_expr(c.alpha, n), domain, cod);
  const bool empty = a.is_empty();
  return {std::move(a), std::move(at), std::move(ad), empty};
}

GapReport gap_check(const LatticeGraph& g, const ModelParams& p, int n_particles, ExcitationCoefficients alpha,
                    const CheckOptions& opt) {
  Stopwatch sw;
  p.validate(g);
  const double t = uniform_hopping(g, p);
  const double u = p.coupling(0);
  const int n = g.num_sites();
  const std::string lat = g.name(), par = describe(p) + " N=" + std::to_string(n_particles);
  GapReport r;
  const auto gs = fixed_ground(g, p, n_particles, opt.solver);
  if (gs.manifold.dimension() != 1) {
    auto row = inequality_row("gap-unique-ground-state", lat, par, "gap above the fixed-N ground state",
                              0.0, gs.manifold.degeneracy_tolerance, 0.0);
    row.note = "hypothesis unmet: ground manifold dimension " + std::to_string(gs.manifold.dimension());
    r.rows.push_back(row);
    stamp(r.rows, 0, sw);
    return r;
  }
  const bool was_normal = std::abs(alpha.norm_squared() - 1.0) <= 1e-14;
  const auto ops = build_excitation(g, p, alpha, gs.basis);
  if (ops.empty) throw ConfigError("no room for another up fermion");
  const auto& phi = gs.phi;

  const Eigen::VectorXcd v = ops.a_up.apply(phi.amplitudes);
  const auto hc = build_hamiltonian(g, p, ops.a_up.codomain());
  const Eigen::VectorXcd w = hc.apply(v) - gs.energy * v;
  r.norm_condition = v.squaredNorm();
  r.ratio = w.norm() / v.norm();
  r.norm_tilde = ops.a_tilde.apply(phi.amplitudes).norm();
  r.norm_updown = ops.a_updown.apply(phi.amplitudes).norm();
  r.nu_up = static_cast<double>(gs.sector.n_up) / n;
  r.nu_down = static_cast<double>(gs.sector.n_down) / n;
  const int z = g.max_coordination();
  r.gamma_nn = z;
  r.gamma_tilde = static_cast<double>(z) * z;
  r.lieb = g.count_a() != g.count_b();
  r.a = r.lieb ? static_cast<double>(std::min(g.count_a(), g.count_b())) / n : 0.0;
  r.base = 0.5 * u + p.mu;
  r.hop_penalty = std::sqrt(2.0 * r.gamma_tilde) * std::abs(t);

  const auto dens = down_density(g, phi);
  double exact = 0.0;
  for (int x = 0; x < n; ++x) exact += std::norm(alpha.alpha[static_cast<std::size_t>(x)]) * dens[static_cast<std::size_t>(x)];
  std::string density_note;
  double nu_eff = r.nu_down;
  if (r.lieb) {
    nu_eff = r.nu_down / r.a;
    density_note = "sublattice-resolved nu_d/a";
  } else if (!flat(dens, 1e-8)) {
    nu_eff = exact;
    density_note = "non-uniform down density; exact per-site sum used";
  }
  r.density_penalty = std::sqrt(2.0 * nu_eff) * u;
  r.bound_tight = r.base - std::sqrt(2.0) * std::abs(t) * r.norm_tilde - std::sqrt(2.0) * u * r.norm_updown;
  r.bound_loose = r.base - r.hop_penalty - r.density_penalty;
  r.hypothesis_met = r.norm_condition >= 0.5;

  auto nc = inequality_row("gap-norm-condition", lat, par, "<Phi, A+A Phi> >= 1/2", r.norm_condition, 0.5, 0.0);
  if (!was_normal) nc.note = "alpha rescaled to unit norm";
  if (!r.hypothesis_met) nc.note += (nc.note.empty() ? "" : "; ") + std::string("hypothesis unmet, no gap verdict");
  r.rows.push_back(nc);

  int support = 0;
  int site = -1;
  for (int x = 0; x < n; ++x)
    if (alpha.alpha[static_cast<std::size_t>(x)] != cplx{}) {
      ++support;
      site = x;
    }
  const auto dens_up = [&](int x) { return inner(phi, number_op(x, Spin::Up, phi.basis), phi).real(); };
  if (support == 1)
    r.rows.push_back(equality_row("gap-norm-delta", lat, par, "norm condition vs 1 - <n_x0,u>", r.norm_condition,
                                  1.0 - dens_up(site), 1e-10));
  if (support == 2)
    r.rows.push_back(inequality_row("gap-norm-two-site", lat, par, "norm condition >= 1 - 3 nu_u", r.norm_condition,
                                    1.0 - 3.0 * r.nu_up, 1e-10));

  if (r.hypothesis_met) {
    auto tight = inequality_row("gap-tight-bound", lat, par, "ratio >= (U/2+mu) - sqrt2|t|·|A~Phi| - sqrt2 U·|A_ud Phi|",
                                r.ratio, r.bound_tight, opt.inequality_tol);
    r.rows.push_back(tight);
    auto loose = inequality_row("gap-loose-bound", lat, par, "ratio >= (U/2+mu) - sqrt(2 g~)|t| - sqrt(2 nu) U", r.ratio,
                                r.bound_loose, opt.inequality_tol);
    loose.note = fmt("gamma~=%g", r.gamma_tilde) + (density_note.empty() ? "" : "; " + density_note);
    r.rows.push_back(loose);
  }
  double tilde_sum = 0.0;
  for (const auto& a : alpha_tilde(g, p, alpha.alpha)) tilde_sum += std::norm(a);
  r.rows.push_back(inequality_row("gap-tilde-norm", lat, par, "sum|a~|^2 >= |A~ Phi|^2", tilde_sum,
                                  r.norm_tilde * r.norm_tilde, opt.inequality_tol));
  r.rows.push_back(inequality_row("gap-tilde-constant", lat, par, "gamma~ >= sum|a~|^2", r.gamma_tilde, tilde_sum,
                                  opt.inequality_tol));
  auto dn = inequality_row("gap-density-norm", lat, par, "nu_eff >= |A_ud Phi|^2", nu_eff,
                           r.norm_updown * r.norm_updown, opt.inequality_tol);
  dn.note = density_note;
  r.rows.push_back(dn);
  stamp(r.rows, 0, sw);
  return r;
}

Report sublattice_density_check(const LatticeGraph& g, const ModelParams& p, int n_particles,
                                ExcitationCoefficients alpha, const CheckOptions& opt) {
  Stopwatch sw;
  p.validate(g);
  const int n = g.num_sites();
  if (g.count_a() == g.count_b()) throw ConfigError("sublattice density bound needs |A| != |B|");
  const double a = static_cast<double>(std::min(g.count_a(), g.count_b())) / n;
  const auto gs = fixed_ground(g, p, n_particles, opt.solver);
  const auto ops = build_excitation(g, p, alpha, gs.basis);
  const double lhs = ops.a_updown.apply(gs.phi.amplitudes).squaredNorm();
  const auto dens = down_density(g, gs.phi);
  double exact = 0.0, nda = 0.0, ndb = 0.0;
  std::vector<double> da, db;
  for (int x = 0; x < n; ++x) {
    const double d = dens[static_cast<std::size_t>(x)];
    exact += std::norm(alpha.alpha[static_cast<std::size_t>(x)]) * d;
    if (g.sublattice(x) == Sublattice::A) {
      nda += d;
      da.push_back(d);
    } else {
      ndb += d;
      db.push_back(d);
    }
  }
  const double resolved = nda / g.count_a() + ndb / g.count_b();
  const double nu = static_cast<double>(gs.sector.n_down) / n;
  const std::string lat = g.name(), par = describe(p) + " N=" + std::to_string(n_particles);
  const double tol = opt.inequality_tol;
  Report rows;
  rows.push_back(inequality_row("lieb-density-exact", lat, par, "sum|a|^2<n_d> >= |A_ud Phi|^2", exact, lhs, tol));
  auto sub = inequality_row("lieb-density-sublattice", lat, par, "N_dA/|A| + N_dB/|B| >= sum|a|^2<n_d>", resolved,
                            exact, tol);
  if (!flat(da, 1e-8) || !flat(db, 1e-8)) sub.note = "density not uniform on each sublattice";
  rows.push_back(sub);
  rows.push_back(inequality_row("lieb-density-fraction", lat, par, "nu_d/a >= N_dA/|A| + N_dB/|B|", nu / a, resolved,
                                tol));
  auto total = inequality_row("lieb-density-bound", lat, par, "nu_d/a >= |A_ud Phi|^2", nu / a, lhs, tol);
  total.note = fmt("a=%.6g", a) + fmt(", nu_d=%.6g", nu);
  rows.push_back(total);
  stamp(rows, 0, sw);
  return rows;
}

DispersionReport pairing_dispersion(const LatticeGraph& g, const ModelParams& p, int n_particles,
                                    const std::vector<std::vector<double>>& momenta, const CheckOptions& opt) {
  Stopwatch sw;
  p.validate(g);
  const int n = g.num_sites();
  DispersionReport rep;
  rep.n_particles = n_particles;
  const auto gs = fixed_ground(g, p, n_particles, opt.solver);
  rep.ground_energy = gs.energy;
  const std::string lat = g.name(), par = describe(p) + " N=" + std::to_string(n_particles);
  if (gs.manifold.dimension() != 1) {
    auto row = inequality_row("dispersion-unique-ground-state", lat, par, "gap above the fixed-N ground state", 0.0,
                              gs.manifold.degeneracy_tolerance, 0.0);
    row.note = "ground manifold dimension " + std::to_string(gs.manifold.dimension()) + "; first state used";
    rep.rows.push_back(row);
  }

  if (n_particles + 2 <= 2 * n) {
    const auto above = Basis::restricted(n, Restriction::particle_number(n_particles + 2));
    rep.pair_threshold = global_ground_manifold(build_hamiltonian(g, p, above), opt.solver).energy - gs.energy;
  }
  const auto window = pair_window(n, n_particles);
  const StateVector phi = embed(gs.phi, window);
  const auto h = build_hamiltonian(g, p, window);
  const auto shifted = h - gs.energy * identity(window);

  std::optional<InversionMap> inv;
  if (g.has_geometry()) {
    try {
      inv = inversion(g, 0);
    } catch (const SymmetryError&) {
    }
  }
  rep.inversion = inv.has_value();

  std::vector<LocalTerm> local;
  UnitCellDecomposition cells;
  if (p.uniform(g)) {
    cells = unit_cells(g);
    local = local_decomposition(g, p, cells);
  }
  const Eigen::VectorXcd& v0 = phi.amplitudes;
  const Eigen::VectorXcd h_phi = h.apply(v0);
  // a_x Phi, a_x+ Phi and the cell terms acting on them
  std::vector<Eigen::VectorXcd> a_phi, ad_phi;
  for (int x = 0; x < n; ++x) {
    const auto a = to_operator_projected(eta_pair_expr(g, x), window, window);
    a_phi.push_back(a.apply(v0));
    ad_phi.push_back(a.adjoint().apply(v0));
  }
  struct CellVectors {
    int anchor;
    std::vector<int> support;
    std::vector<Eigen::VectorXcd> h_a, a_h, ad_h, h_ad;  // per support site
  };
  std::vector<CellVectors> cell_vectors;
  for (std::size_t c = 0; c < local.size(); ++c) {
    const auto hc = to_operator_projected(local[c].h, window, window);
    const Eigen::VectorXcd hc_phi = hc.apply(v0);
    CellVectors cv{cells.cells[c].anchor, local[c].support, {}, {}, {}, {}};
    for (int site : local[c].support) {
      const auto a = to_operator_projected(eta_pair_expr(g, site), window, window);
      cv.h_a.push_back(hc.apply(a_phi[static_cast<std::size_t>(site)]));
      cv.a_h.push_back(a.apply(hc_phi));
      cv.ad_h.push_back(a.adjoint().apply(hc_phi));
      cv.h_ad.push_back(hc.apply(ad_phi[static_cast<std::size_t>(site)]));
    }
    cell_vectors.push_back(std::move(cv));
  }

  auto energy_of = [&](const SparseOperator& o, double& den) {
    const Eigen::VectorXcd v = o.apply(phi.amplitudes);
    den = v.squaredNorm();
    if (den <= 1e-12) return std::numeric_limits<double>::quiet_NaN();
    return v.dot(shifted.apply(v)).real() / den;
  };

  const double guard = n - n_particles;
  for (const auto& mom : momenta) {
    DispersionPoint pt;
    pt.p = mom;
    pt.p_norm = norm(mom);
    const std::string pl = par + " " + momentum_label(mom);
    const auto o = to_operator_projected(eta_momentum_expr(g, mom), window, window);
    const auto od = o.adjoint();
    pt.delta_e = energy_of(o, pt.denominator);
    pt.delta_e_conj = energy_of(od, pt.denominator_conj);
    if (std::isnan(pt.delta_e))
      throw ConfigError("O_eta(p) annihilates the ground state (denominator below guard at N=" +
                        std::to_string(n_particles) +
                        "); use the conjugate variant or a particle number off half filling");
    {
      const Eigen::VectorXcd o_phi = o.apply(v0), od_phi = od.apply(v0);
      const Eigen::VectorXcd y_phi = h.apply(o_phi) - o.apply(h_phi);
      const Eigen::VectorXcd yd_phi = od.apply(h_phi) - h.apply(od_phi);
      pt.double_commutator = commutator_expectation(o_phi, y_phi, yd_phi, od_phi).real();
    }

    if (!local.empty()) {
      cplx total{};
      for (const auto& cv : cell_vectors) {
        Eigen::VectorXcd y_phi = Eigen::VectorXcd::Zero(v0.size()), yd_phi = y_phi;
        std::vector<double> phase;
        for (std::size_t k = 0; k < cv.support.size(); ++k) {
          phase.push_back(dot(mom, displacement(g, cv.anchor, cv.support[k])));
          const cplx e = std::polar(1.0, phase.back());
          y_phi += e * (cv.h_a[k] - cv.a_h[k]);
          yd_phi += std::conj(e) * (cv.ad_h[k] - cv.h_ad[k]);
        }
        for (std::size_t k = 0; k < cv.support.size(); ++k) {
          const auto site = static_cast<std::size_t>(cv.support[k]);
          const cplx e = commutator_expectation(a_phi[site], y_phi, yd_phi, ad_phi[site]);
          pt.s1 += (std::cos(phase[k]) * e).real();
          pt.s2 += (std::sin(phase[k]) * e).real();
          total += std::polar(1.0, -phase[k]) * e;
        }
      }
      pt.local_sum = total.real();
    }
    if (pt.p_norm > 0.0) {
      pt.linear_ratio = pt.delta_e / pt.p_norm;
      if (inv) pt.quadratic_ratio = pt.delta_e / (pt.p_norm * pt.p_norm);
    }

    if (guard > 0.0) {
      rep.rows.push_back(
          inequality_row("dispersion-guard", lat, pl, "<O+O> >= |L| - N", pt.denominator, guard, opt.inequality_tol));
    }
    rep.rows.push_back(equality_row("dispersion-norm-identity", lat, pl, "<O+O> - <OO+> vs |L| - N",
                                    pt.denominator - pt.denominator_conj, guard, opt.identity_tol));
    auto floor = inequality_row("dispersion-variational", lat, pl, "Delta E(p) >= E0(N+2) - E0(N)", pt.delta_e,
                                rep.pair_threshold, 1e-10);
    if (rep.pair_threshold < 0.0) floor.note = "the N+2 sector lies lower; Delta E(p) may be negative";
    rep.rows.push_back(floor);
    rep.rows.push_back(inequality_row("dispersion-double-commutator", lat, pl,
                                      "<[O+,[H,O]]>/<O+O> >= Delta E(p)", pt.double_commutator / pt.denominator,
                                      pt.delta_e, opt.inequality_tol));
    if (!local.empty()) {
      auto ls = equality_row("dispersion-local-sum", lat, pl, "sum over cells of S(x0) vs <[O+,[H,O]]>", pt.local_sum,
                             pt.double_commutator, 1e-9);
      ls.note = fmt("S1=%.6g", pt.s1) + fmt(", S2=%.6g", pt.s2);
      rep.rows.push_back(ls);
    }
    if (pt.p_norm == 0.0)
      rep.rows.push_back(inequality_row("dispersion-zero", lat, pl, "1e-10 >= Delta E(0)", 1e-10, pt.delta_e, 0.0));
    if (inv && pt.p_norm > 0.0) {
      std::vector<double> neg = mom;
      for (auto& v : neg) v = -v;
      double den = 0.0;
      const double back = energy_of(to_operator_projected(eta_momentum_expr(g, neg), window, window), den);
      rep.rows.push_back(equality_row("dispersion-inversion-symmetry", lat, pl, "Delta E(p) vs Delta E(-p)",
                                      pt.delta_e, back, 1e-9));
    }
    if (pt.p_norm > 0.0) {
      rep.c0 = std::max(rep.c0, pt.linear_ratio);
      if (pt.quadratic_ratio) rep.c0_tilde = std::max(rep.c0_tilde, *pt.quadratic_ratio);
    }
    rep.points.push_back(pt);
  }
  stamp(rep.rows, 0, sw);
  return rep;
}

double linear_constant(const ModelParams& p) { return 32.0 * std::abs(p.t); }
double quadratic_constant(const ModelParams& p) { return 16.0 * std::abs(p.t); }

int quarter_filling_even(int length) { return 2 * (length / 4); }

TrendReport dispersion_trend(const std::vector<int>& lengths, const ModelParams& p, const CheckOptions& opt) {
  TrendReport tr;
  double lin = 0.0, quad = 0.0;
  Stopwatch sw;
  for (int length : lengths) {
    const auto g = build_chain(length, true);
    const int np = quarter_filling_even(length);
    if (np <= 0) throw ConfigError("chain too short for a quarter-filled even particle number");
    const double pmin = 2.0 * std::numbers::pi / length;
    auto rep = pairing_dispersion(g, p, np, {{0.0}, {pmin}}, opt);
    TrendRow row;
    row.length = length;
    row.n_particles = np;
    row.p_min = pmin;
    row.delta_e0 = rep.points[0].delta_e;
    row.delta_e = rep.points[1].delta_e;
    row.denominator = rep.points[1].denominator;
    row.linear_ratio = rep.points[1].linear_ratio;
    row.quadratic_ratio = rep.points[1].quadratic_ratio.value_or(std::numeric_limits<double>::quiet_NaN());
    lin = std::max(lin, row.linear_ratio);
    quad = std::max(quad, row.quadratic_ratio);
    tr.table.push_back(row);
    for (auto& r : rep.rows) tr.rows.push_back(std::move(r));
  }
  const std::string lat = "chain(pbc) family", par = describe(p);
  Report tail;
  tail.push_back(inequality_row("dispersion-linear-constant", lat, par, "C0 >= max_L Delta E(p_min)/p_min",
                                linear_constant(p), lin, 0.0));
  tail.push_back(inequality_row("dispersion-quadratic-constant", lat, par, "C0~ >= max_L Delta E(p_min)/p_min^2",
                                quadratic_constant(p), quad, 0.0));
  stamp(tail, 0, sw);
  for (auto& r : tail) tr.rows.push_back(std::move(r));
  return tr;
}

Report excitation_identities(const LatticeGraph& g, const ModelParams& p, const CheckOptions& opt) {
  Stopwatch sw;
  p.validate(g);
  check_thermal_guard(g.num_sites(), opt.solver);
  const int n = g.num_sites();
  const double tol = 1e-12;
  const auto basis = Basis::restricted(n, Restriction::full());
  const std::string lat = g.name(), par = describe(p);
  Report rows;

  auto alpha = ExcitationCoefficients::random(n, opt.solver.seed);
  const auto a = to_operator(excitation_expr(alpha.alpha, n), basis, basis);
  rows.push_back(equality_row("excitation-anticommutator", lat, par, "max|A A+ + A+ A - 1|",
                              max_abs_diff(anticommutator(a, a.adjoint()), identity(basis)), 0.0, tol));

  if (p.uniform(g)) {
    const auto h = build_hamiltonian(g, p, basis);
    const double u = p.coupling(0);
    std::vector<cplx> hop(static_cast<std::size_t>(n));
    for (const auto& e : g.edges()) {
      hop[static_cast<std::size_t>(e.y)] += p.hopping(e) * alpha.alpha[static_cast<std::size_t>(e.x)];
      hop[static_cast<std::size_t>(e.x)] += p.hopping(e) * alpha.alpha[static_cast<std::size_t>(e.y)];
    }
    const auto rhs = to_operator((0.5 * u + p.mu) * excitation_expr(alpha.alpha, n) + excitation_expr(hop, n) -
                                     u * excitation_density_expr(alpha.alpha, n),
                                 basis, basis);
    rows.push_back(equality_row("excitation-commutator", lat, par,
                                "max|[H,A] - (U/2+mu)A - t sum a~ c+ + U sum a c+ n_d|",
                                max_abs_diff(commutator(h, a), rhs), 0.0, tol));
  }

  std::vector<std::vector<double>> momenta;
  const std::size_t rank = g.has_geometry() ? g.extents().size() : 1;
  momenta.emplace_back(rank, 0.0);
  if (g.has_geometry())
    for (std::size_t ax = 0; ax < rank; ++ax) {
      if (!g.periodic()[ax]) continue;
      const int period = g.extents()[ax] / g.cell_step()[ax];
      for (int k = 1; k < period; ++k) {
        std::vector<double> q(rank, 0.0);
        q[ax] = 2.0 * std::numbers::pi * k / period;
        momenta.push_back(q);
      }
    }
  Expr holes;
  for (int x = 0; x < n; ++x)
    holes += identity_expr() - number(x, Spin::Up, n) - number(x, Spin::Down, n);
  const auto holes_op = to_operator(holes, basis, basis);
  double worst = 0.0;
  for (const auto& q : momenta) {
    const auto o = to_operator(eta_momentum_expr(g, q), basis, basis);
    worst = std::max(worst, max_abs_diff(o.adjoint() * o - o * o.adjoint(), holes_op));
  }
  auto pn = equality_row("pair-norm-identity", lat, par, "max_p |O+O - OO+ - sum(1-n_x)|", worst, 0.0, tol);
  pn.note = std::to_string(momenta.size()) + " momenta";
  rows.push_back(pn);

  if (p.mu == 0.0 && p.uniform(g)) {
    const auto cells = unit_cells(g);
    double local = 0.0;
    for (const auto& term : local_decomposition(g, p, cells)) {
      const auto hc = to_operator(term.h, basis, basis);
      Expr gen;
      for (int y : term.support) gen += eta_pair_expr(g, y);
      local = std::max(local, max_abs(commutator(hc, to_operator(gen, basis, basis))));
    }
    rows.push_back(equality_row("local-su2", lat, par, "max over cells |[h(U_x0), sum_{y in V} a_y]|", local, 0.0, tol));
  }
  stamp(rows, 0, sw);
  return rows;
}

}  // namespace ahm
