#include "ahm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "ahm/errors.hpp"
#include "ahm/excitations.hpp"

namespace ahm {

using nlohmann::json;

const std::vector<std::string> kTasks = {"verify-identities", "lro",          "magnetization", "gap",
                                         "dispersion",        "thermal-scan", "spectrum"};

namespace {

void only_keys(const json& obj, const std::string& block, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(block + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigError("unknown key '" + key + "' in " + block);
  }
}

template <class T>
T get(const json& obj, const std::string& block, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(block + "." + key + " has the wrong type");
  }
}

double finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw ConfigError(what + " must be finite");
  return v;
}

std::vector<Edge> edge_triples(const json& arr, const std::string& what) {
  if (!arr.is_array()) throw ConfigError(what + " must be a list of [x, y, t] triples");
  std::vector<Edge> out;
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
        !e[2].is_number())
      throw ConfigError(what + " entries must be [x, y, t]");
    out.push_back({e[0].get<int>(), e[1].get<int>(), finite(e[2].get<double>(), what)});
  }
  return out;
}

LatticeSpec parse_lattice(const json& j) {
  only_keys(j, "lattice", {"type", "dims", "k", "pbc", "num_sites", "sublattice", "edges"});
  LatticeSpec s;
  s.type = get<std::string>(j, "lattice", "type", "");
  s.dims = get<std::vector<int>>(j, "lattice", "dims", {});
  s.k = get<int>(j, "lattice", "k", 0);
  s.pbc = get<bool>(j, "lattice", "pbc", s.type != "dimer");
  const auto need_dims = [&](std::size_t n) {
    if (n && s.dims.size() != n) throw ConfigError("lattice.dims must have " + std::to_string(n) + " entries");
    if (s.dims.empty()) throw ConfigError("lattice.dims is required");
    for (int d : s.dims)
      if (d < 1) throw ConfigError("lattice.dims entries must be positive");
  };
  if (s.type == "chain") {
    need_dims(1);
  } else if (s.type == "dimer") {
    s.dims = {2};
    s.pbc = false;
  } else if (s.type == "star") {
    if (s.k < 1) throw ConfigError("lattice.k must be >= 1 for a star");
  } else if (s.type == "hypercube") {
    need_dims(0);
  } else if (s.type == "lieb2d") {
    need_dims(2);
  } else if (s.type == "custom") {
    s.num_sites = get<int>(j, "lattice", "num_sites", 0);
    s.sublattice = get<std::vector<std::string>>(j, "lattice", "sublattice", {});
    if (!j.contains("edges")) throw ConfigError("lattice.edges is required for a custom graph");
    s.edges = edge_triples(j.at("edges"), "lattice.edges");
    if (s.num_sites < 1 || static_cast<int>(s.sublattice.size()) != s.num_sites)
      throw ConfigError("custom lattice needs num_sites and one sublattice label per site");
    for (const auto& l : s.sublattice)
      if (l != "A" && l != "B") throw ConfigError("sublattice labels must be \"A\" or \"B\"");
  } else {
    throw ConfigError("lattice.type must be one of chain, dimer, star, hypercube, lieb2d, custom");
  }
  return s;
}

json lattice_json(const LatticeSpec& s) {
  json j = {{"type", s.type}};
  if (s.type == "star") {
    j["k"] = s.k;
  } else if (s.type == "custom") {
    j["num_sites"] = s.num_sites;
    j["sublattice"] = s.sublattice;
    json edges = json::array();
    for (const auto& e : s.edges) edges.push_back({e.x, e.y, e.t});
    j["edges"] = edges;
  } else {
    j["dims"] = s.dims;
    j["pbc"] = s.pbc;
  }
  return j;
}

}  // namespace

CheckOptions RunConfig::check_options() const {
  CheckOptions o;
  o.identity_tol = numerics.identity_tol;
  o.inequality_tol = numerics.inequality_tol;
  o.solver.krylov_tol = numerics.krylov_tol;
  o.solver.degeneracy_rel = numerics.degeneracy_rel;
  o.solver.dense_threshold = numerics.dense_threshold;
  o.solver.seed = numerics.seed;
  o.solver.allow_large = numerics.allow_large;
  return o;
}

nlohmann::json RunConfig::to_json() const {
  json edge_t = json::array();
  for (const auto& [k, v] : model.edge_t) edge_t.push_back({k.first, k.second, v});
  json m = {{"t", model.t}, {"U", model.U}, {"mu", model.mu}, {"B", fields}, {"edge_t", edge_t},
            {"site_U", model.site_U}};
  json alpha = {{"kind", task.alpha.kind},
                {"sites", task.alpha.sites},
                {"amplitudes", task.alpha.amplitudes},
                {"seed", task.alpha.seed}};
  json t = {{"name", task.name},   {"beta", task.beta},       {"p", task.p},
            {"alpha", alpha},      {"lengths", task.lengths}, {"states", task.states}};
  t["N"] = task.n_particles ? json(*task.n_particles) : json(nullptr);
  t["sector"] = task.sector ? json::array({task.sector->n_up, task.sector->n_down}) : json(nullptr);
  json n = {{"identity_tol", numerics.identity_tol}, {"inequality_tol", numerics.inequality_tol},
            {"krylov_tol", numerics.krylov_tol},     {"degeneracy_rel", numerics.degeneracy_rel},
            {"dense_threshold", numerics.dense_threshold}, {"seed", numerics.seed},
            {"allow_large", numerics.allow_large}};
  json o = {{"format", output.format}, {"path", output.path}, {"timing", output.timing}};
  return {{"lattice", lattice_json(lattice)}, {"model", m}, {"task", t}, {"numerics", n}, {"output", o}};
}

RunConfig parse_config(const json& doc) {
  only_keys(doc, "config", {"lattice", "model", "task", "numerics", "output"});
  if (!doc.contains("lattice")) throw ConfigError("missing lattice block");
  if (!doc.contains("task")) throw ConfigError("missing task block");
  RunConfig c;
  c.lattice = parse_lattice(doc.at("lattice"));

  const json model = doc.value("model", json::object());
  only_keys(model, "model", {"t", "U", "mu", "B", "edge_t", "site_U"});
  c.model.t = finite(get<double>(model, "model", "t", c.model.t), "model.t");
  c.model.U = finite(get<double>(model, "model", "U", c.model.U), "model.U");
  c.mu_explicit = model.contains("mu");
  c.model.mu = finite(get<double>(model, "model", "mu", c.model.mu), "model.mu");
  c.fields = get<std::vector<double>>(model, "model", "B", c.fields);
  for (double b : c.fields)
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("model.B entries must be positive");
  c.model.site_U = get<std::vector<double>>(model, "model", "site_U", {});
  if (model.contains("edge_t"))
    for (const auto& e : edge_triples(model.at("edge_t"), "model.edge_t"))
      c.model.edge_t[{std::min(e.x, e.y), std::max(e.x, e.y)}] = e.t;

  const json& task = doc.at("task");
  only_keys(task, "task", {"name", "beta", "p", "N", "alpha", "lengths", "states", "sector"});
  c.task.name = get<std::string>(task, "task", "name", "");
  if (std::find(kTasks.begin(), kTasks.end(), c.task.name) == kTasks.end())
    throw ConfigError("task.name must be one of verify-identities, lro, magnetization, gap, dispersion, "
                      "thermal-scan, spectrum");
  c.task.beta = get<std::vector<double>>(task, "task", "beta", c.task.beta);
  for (double b : c.task.beta)
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("task.beta entries must be positive");
  c.task.p = get<std::vector<std::vector<double>>>(task, "task", "p", {});
  if (task.contains("N") && !task.at("N").is_null()) c.task.n_particles = get<int>(task, "task", "N", 0);
  c.task.lengths = get<std::vector<int>>(task, "task", "lengths", {});
  for (int l : c.task.lengths)
    if (l < 4) throw ConfigError("task.lengths entries must be >= 4");
  c.task.states = get<int>(task, "task", "states", c.task.states);
  if (c.task.states < 1) throw ConfigError("task.states must be >= 1");
  if (task.contains("sector") && !task.at("sector").is_null()) {
    const auto s = get<std::vector<int>>(task, "task", "sector", {});
    if (s.size() != 2) throw ConfigError("task.sector must be [n_up, n_down]");
    c.task.sector = Sector{s[0], s[1]};
  }
  if (task.contains("alpha")) {
    const json& a = task.at("alpha");
    only_keys(a, "task.alpha", {"kind", "sites", "amplitudes", "seed"});
    c.task.alpha.kind = get<std::string>(a, "task.alpha", "kind", c.task.alpha.kind);
    c.task.alpha.sites = get<std::vector<int>>(a, "task.alpha", "sites", c.task.alpha.sites);
    c.task.alpha.amplitudes = get<std::vector<double>>(a, "task.alpha", "amplitudes", {});
    c.task.alpha.seed = get<unsigned long long>(a, "task.alpha", "seed", 0);
  }
  const auto& al = c.task.alpha;
  if (al.kind == "delta") {
    if (al.sites.size() != 1) throw ConfigError("delta excitation needs exactly one site");
  } else if (al.kind == "two-site") {
    if (al.sites.size() != 2) throw ConfigError("two-site excitation needs exactly two sites");
  } else if (al.kind != "random") {
    throw ConfigError("task.alpha.kind must be delta, two-site or random");
  }
  if (!al.amplitudes.empty() && al.amplitudes.size() != al.sites.size())
    throw ConfigError("task.alpha.amplitudes must match task.alpha.sites");

  const json numerics = doc.value("numerics", json::object());
  only_keys(numerics, "numerics",
            {"identity_tol", "inequality_tol", "krylov_tol", "degeneracy_rel", "dense_threshold", "seed",
             "allow_large"});
  auto& n = c.numerics;
  n.identity_tol = get<double>(numerics, "numerics", "identity_tol", n.identity_tol);
  n.inequality_tol = get<double>(numerics, "numerics", "inequality_tol", n.inequality_tol);
  n.krylov_tol = get<double>(numerics, "numerics", "krylov_tol", n.krylov_tol);
  n.degeneracy_rel = get<double>(numerics, "numerics", "degeneracy_rel", n.degeneracy_rel);
  n.dense_threshold = get<long>(numerics, "numerics", "dense_threshold", n.dense_threshold);
  n.seed = get<unsigned long long>(numerics, "numerics", "seed", n.seed);
  n.allow_large = get<bool>(numerics, "numerics", "allow_large", n.allow_large);
  for (double v : {n.identity_tol, n.inequality_tol, n.krylov_tol, n.degeneracy_rel})
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("numerics tolerances must be finite and >= 0");
  if (n.dense_threshold < 1) throw ConfigError("numerics.dense_threshold must be positive");

  const json output = doc.value("output", json::object());
  only_keys(output, "output", {"format", "path", "timing"});
  c.output.format = get<std::string>(output, "output", "format", c.output.format);
  if (c.output.format != "csv" && c.output.format != "json") throw ConfigError("output.format must be csv or json");
  c.output.path = get<std::string>(output, "output", "path", "report." + c.output.format);
  c.output.timing = get<bool>(output, "output", "timing", c.output.timing);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

LatticeGraph build_lattice(const LatticeSpec& s) {
  if (s.type == "chain") return build_chain(s.dims[0], s.pbc);
  if (s.type == "dimer") return build_chain(2, false);
  if (s.type == "star") return build_star(s.k);
  if (s.type == "hypercube") return build_hypercube(s.dims, s.pbc);
  if (s.type == "lieb2d") return build_lieb2d(s.dims[0], s.dims[1], s.pbc);
  std::vector<Sublattice> sub;
  for (const auto& l : s.sublattice) sub.push_back(l == "A" ? Sublattice::A : Sublattice::B);
  return LatticeGraph::custom(s.num_sites, std::move(sub), s.edges);
}

void resolve_defaults(RunConfig& cfg, const LatticeGraph& g) {
  auto& t = cfg.task;
  const int n = g.num_sites();
  if (t.name == "gap" && !t.n_particles) t.n_particles = 2;
  if (t.name == "dispersion" && !t.n_particles && t.lengths.empty()) t.n_particles = quarter_filling_even(n);
  if (t.name == "dispersion" && t.p.empty() && t.lengths.empty()) {
    const std::size_t rank = g.has_geometry() ? g.extents().size() : 1;
    t.p.emplace_back(rank, 0.0);
    if (g.has_geometry() && g.periodic()[0]) {
      std::vector<double> q(rank, 0.0);
      q[0] = 2.0 * std::numbers::pi * g.cell_step()[0] / g.extents()[0];
      t.p.push_back(q);
    }
  }
  if (t.alpha.seed == 0) t.alpha.seed = cfg.numerics.seed;
  if (t.alpha.amplitudes.empty() && t.alpha.kind != "random") t.alpha.amplitudes.assign(t.alpha.sites.size(), 1.0);
  for (int x : t.alpha.sites)
    if (x < 0 || x >= n) throw ConfigError("task.alpha.sites out of range");
  if (t.name == "dispersion")
    for (const auto& q : t.p)
      if (q.size() != (g.has_geometry() ? g.extents().size() : 1))
        throw ConfigError("task.p entries must match the lattice dimension");
}

}  // namespace ahm
