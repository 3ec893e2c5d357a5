#pragma once

#include <optional>
#include <vector>

#include "ahm/fock.hpp"
#include "ahm/lattice.hpp"
#include "ahm/model.hpp"
#include "ahm/observables.hpp"
#include "ahm/report.hpp"

namespace ahm {

/// Site amplitudes of a single up-spin excitation.
struct ExcitationCoefficients {
  std::vector<cplx> alpha;
  bool normalized = false;

  static ExcitationCoefficients delta(int num_sites, int site);
  static ExcitationCoefficients two_site(int num_sites, int x, int y, cplx ax = 1.0, cplx ay = 1.0);
  /// Seeded random complex amplitudes.
  static ExcitationCoefficients random(int num_sites, unsigned long long seed);

  double norm_squared() const;
  /// Rescales to unit norm; returns false when it had to change anything.
  bool normalize();
};

/// alpha~_y = sum_x (t_xy / t) alpha_x over the neighbours of y.
std::vector<cplx> alpha_tilde(const LatticeGraph& g, const ModelParams& p, const std::vector<cplx>& alpha);

Expr excitation_expr(const std::vector<cplx>& alpha, int num_sites);           // sum alpha c+_xu
Expr excitation_density_expr(const std::vector<cplx>& alpha, int num_sites);   // sum alpha c+_xu n_xd

struct ExcitationOperators {
  SparseOperator a_up;
  SparseOperator a_tilde;
  SparseOperator a_updown;
  bool empty = false;  // no room for another up fermion
};

/// The three excitation operators on `domain`; codomain chosen automatically.
/// Unnormalized amplitudes are rescaled (coefficients.normalized reports it).
ExcitationOperators build_excitation(const LatticeGraph& g, const ModelParams& p, ExcitationCoefficients& c,
                                     const BasisPtr& domain);

struct GapReport {
  double ratio = 0.0;
  double norm_condition = 0.0;
  double norm_tilde = 0.0;
  double norm_updown = 0.0;
  double bound_tight = 0.0;
  double bound_loose = 0.0;
  double base = 0.0;             // U/2 + mu
  double hop_penalty = 0.0;      // sqrt(2 gamma~) |t|
  double density_penalty = 0.0;  // sqrt(2 nu_d) U (or sqrt(2 nu_d / a) U)
  double gamma_nn = 0.0;
  double gamma_tilde = 0.0;
  double nu_up = 0.0;
  double nu_down = 0.0;
  double a = 0.0;  // |minority sublattice| / |L|; 0 for balanced graphs
  bool lieb = false;
  bool hypothesis_met = false;
  Report rows;
};

/// Excitation gap bounds above the fixed-N attractive ground state.
GapReport gap_check(const LatticeGraph& g, const ModelParams& p, int n_particles, ExcitationCoefficients alpha,
                    const CheckOptions& opt = {});

/// ||A_ud Phi||^2 <= sum |alpha|^2 <n_d> <= N_dA/|A| + N_dB/|B| <= nu_d / a.
Report sublattice_density_check(const LatticeGraph& g, const ModelParams& p, int n_particles,
                                ExcitationCoefficients alpha, const CheckOptions& opt = {});

struct DispersionPoint {
  std::vector<double> p;
  double p_norm = 0.0;
  double delta_e = 0.0;           // with O_eta(p)
  double delta_e_conj = 0.0;      // with O_eta(p)^dagger (nan when it annihilates the state)
  double denominator = 0.0;       // <O+ O>
  double denominator_conj = 0.0;  // <O O+>
  double double_commutator = 0.0;  // <[O+,[H,O]]>
  double local_sum = 0.0;          // sum over cells of S(x0)
  double s1 = 0.0, s2 = 0.0;       // sums of the cosine and sine parts
  double linear_ratio = 0.0;
  std::optional<double> quadratic_ratio;
};

struct DispersionReport {
  int n_particles = 0;
  double ground_energy = 0.0;
  double pair_threshold = 0.0;  // E0(N+2) - E0(N), the variational floor of Delta E
  bool inversion = false;
  double c0 = 0.0;        // empirical max Delta E / |p| over p != 0
  double c0_tilde = 0.0;  // empirical max Delta E / p^2 (inversion only)
  std::vector<DispersionPoint> points;
  Report rows;
};

/// Variational pair-excitation energies above the fixed-N ground state.
DispersionReport pairing_dispersion(const LatticeGraph& g, const ModelParams& p, int n_particles,
                                    const std::vector<std::vector<double>>& momenta, const CheckOptions& opt = {});

/// Pinned constants for the finite-size trend on rings with N <= L/2:
/// Delta E(p) <= 8 |t| p^2 L/(L-N), hence these bounds for p <= pi/2.
double linear_constant(const ModelParams& p);
double quadratic_constant(const ModelParams& p);

/// Even particle number closest to quarter filling from below, 2 floor(L/4).
int quarter_filling_even(int length);

struct TrendRow {
  int length = 0;
  int n_particles = 0;
  double p_min = 0.0;
  double delta_e0 = 0.0;
  double delta_e = 0.0;
  double denominator = 0.0;
  double linear_ratio = 0.0;
  double quadratic_ratio = 0.0;
};

struct TrendReport {
  std::vector<TrendRow> table;
  Report rows;
};

/// Delta E(2 pi / L) on periodic chains of the given lengths.
TrendReport dispersion_trend(const std::vector<int>& lengths, const ModelParams& p, const CheckOptions& opt = {});

/// Anticommutator of the excitation operator, the commutator [H, A_up], the
/// eta-pair norm identity and the local SU(2) invariance of the cell terms.
Report excitation_identities(const LatticeGraph& g, const ModelParams& p, const CheckOptions& opt = {});

}  // namespace ahm
