#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ahm/lattice.hpp"
#include "ahm/model.hpp"
#include "ahm/observables.hpp"

namespace ahm {

struct LatticeSpec {
  std::string type = "chain";  // chain | dimer | star | hypercube | lieb2d | custom
  std::vector<int> dims;       // chain: [L], hypercube: sides, lieb2d: [lx, ly]
  int k = 0;                   // star leaves
  bool pbc = true;
  // custom only
  int num_sites = 0;
  std::vector<std::string> sublattice;
  std::vector<Edge> edges;
};

struct AlphaSpec {
  std::string kind = "delta";  // delta | two-site | random
  std::vector<int> sites{0};
  std::vector<double> amplitudes;  // real amplitudes per site (default 1)
  unsigned long long seed = 0;     // random only; 0 takes numerics.seed
};

struct TaskSpec {
  std::string name;
  std::vector<double> beta{1.0};
  std::vector<std::vector<double>> p;  // empty: 0 and the smallest commensurate momentum
  std::optional<int> n_particles;      // gap: 2, dispersion: 2 floor(L/4)
  AlphaSpec alpha;
  std::vector<int> lengths;  // dispersion trend on periodic chains
  int states = 8;            // spectrum
  std::optional<Sector> sector;
};

struct NumericsSpec {
  double identity_tol = 1e-12;
  double inequality_tol = 1e-10;
  double krylov_tol = 1e-10;
  double degeneracy_rel = 1e-8;
  long dense_threshold = 4096;
  unsigned long long seed = 20240531ULL;
  bool allow_large = false;
};

struct OutputSpec {
  std::string format = "csv";  // csv | json
  std::string path = "report.csv";
  bool timing = false;  // off keeps reports byte-reproducible
};

struct RunConfig {
  LatticeSpec lattice;
  ModelParams model;
  std::vector<double> fields{0.5, 1.0, 2.0};
  bool mu_explicit = false;
  TaskSpec task;
  NumericsSpec numerics;
  OutputSpec output;

  CheckOptions check_options() const;
  nlohmann::json to_json() const;
};

extern const std::vector<std::string> kTasks;

/// Strict schema check: unknown keys, wrong types and bad values throw ConfigError.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

LatticeGraph build_lattice(const LatticeSpec& spec);

/// Fills the task defaults that depend on the lattice.
void resolve_defaults(RunConfig& cfg, const LatticeGraph& g);

}  // namespace ahm
