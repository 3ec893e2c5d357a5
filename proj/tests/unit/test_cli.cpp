#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "ahm/config.hpp"
#include "ahm/errors.hpp"
#include "ahm/report_writer.hpp"
#include "ahm/runner.hpp"

using namespace ahm;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "ahm-cli-tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

int run_doc(const json& doc, const fs::path& out, std::string* stdout_text = nullptr) {
  const auto cfg_path = scratch(out.filename().string() + ".in.json");
  std::ofstream(cfg_path) << doc.dump();
  std::ostringstream o, e;
  const int code = run_file(cfg_path.string(), o, e, out.string());
  if (stdout_text) *stdout_text = o.str() + e.str();
  return code;
}

ReportRow sample_row() {
  auto r = inequality_row("lro-bound", "star(3)", "t=1 U=2", "a, \"quoted\" quantity", 0.1, 1.0 / 24.0, 0.0);
  r.seconds = 0.25;
  return r;
}

}  // namespace

TEST_CASE("csv writer") {
  CHECK(to_csv({}) == "claim_id,lattice,params,quantity,lhs,rhs,margin,verdict,seconds\n");
  const auto csv = to_csv({sample_row()});
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.find("\"a, \"\"quoted\"\" quantity\"") != std::string::npos);
  CHECK(csv.find("0.041666666666666664") != std::string::npos);
  CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("json mirrors csv values") {
  const Report rows{sample_row()};
  const auto j = json::parse(report_json(rows, json::object()));
  REQUIRE(j["rows"].size() == 1);
  const auto& r = j["rows"][0];
  CHECK(r["claim_id"] == "lro-bound");
  CHECK(r["quantity"] == "a, \"quoted\" quantity");
  CHECK(r["lhs"].get<double>() == rows[0].lhs);
  CHECK(r["rhs"].get<double>() == rows[0].rhs);
  CHECK(r["margin"].get<double>() == rows[0].margin);
  CHECK(r["verdict"] == "pass");
  CHECK(r["seconds"].get<double>() == 0.25);
  CHECK(json::parse(report_json({}, json::object()))["rows"].empty());
}

TEST_CASE("config schema") {
  const json ok = {{"lattice", {{"type", "chain"}, {"dims", {4}}}}, {"task", {{"name", "lro"}}}};
  const auto cfg = parse_config(ok);
  CHECK(cfg.lattice.pbc);
  CHECK(cfg.model.U == 4.0);
  CHECK(cfg.output.format == "csv");
  const auto echo = cfg.to_json();
  for (const char* block : {"lattice", "model", "task", "numerics", "output"}) CHECK(echo.contains(block));
  CHECK(echo["numerics"]["seed"] == 20240531ULL);
  CHECK(parse_config(echo).to_json() == echo);

  auto bad = ok;
  bad["lattice"]["type"] = "triangle";
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  bad = ok;
  bad["model"] = {{"U", "big"}};
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  bad = ok;
  bad["task"]["name"] = "everything";
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  bad = ok;
  bad["numerics"] = {{"sed", 1}};
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  bad = ok;
  bad["lattice"] = {{"type", "custom"}, {"num_sites", 2}, {"sublattice", {"A", "C"}}, {"edges", {{0, 1, 1.0}}}};
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
}

TEST_CASE("run: verify-identities on chain(4,pbc) passes") {
  const auto out = scratch("ident.csv");
  fs::remove(out);
  const json doc = {{"lattice", {{"type", "chain"}, {"dims", {4}}, {"pbc", true}}},
                    {"task", {{"name", "verify-identities"}}}};
  CHECK(run_doc(doc, out) == 0);
  CHECK(fs::exists(out));
  CHECK(fs::exists(out.string() + ".config.json"));
}

TEST_CASE("run: lro on star(3) clears 1/24") {
  const auto out = scratch("lro.json");
  const json doc = {{"lattice", {{"type", "star"}, {"k", 3}}},
                    {"model", {{"t", 1.0}, {"U", 2.0}}},
                    {"task", {{"name", "lro"}}},
                    {"output", {{"format", "json"}}}};
  REQUIRE(run_doc(doc, out) == 0);
  const auto j = json::parse(slurp(out));
  bool found = false;
  for (const auto& r : j["rows"])
    if (r["claim_id"] == "lro-bound") {
      found = true;
      CHECK(r["rhs"].get<double>() == doctest::Approx(1.0 / 24.0));
      CHECK(r["margin"].get<double>() >= 0.0);
    }
  CHECK(found);
  CHECK(j["config"]["task"]["name"] == "lro");
}

TEST_CASE("run: malformed lattice exits 2 without output") {
  const auto out = scratch("bad.csv");
  fs::remove(out);
  const json doc = {{"lattice", {{"type", "chain"}}}, {"task", {{"name", "lro"}}}};
  CHECK(run_doc(doc, out) == 2);
  CHECK_FALSE(fs::exists(out));
  const json odd = {{"lattice", {{"type", "chain"}, {"dims", {5}}, {"pbc", true}}}, {"task", {{"name", "lro"}}}};
  CHECK(run_doc(odd, out) == 2);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("run: size guard and unwritable path exit 2") {
  const json big = {{"lattice", {{"type", "chain"}, {"dims", {10}}}}, {"task", {{"name", "thermal-scan"}}}};
  CHECK(run_doc(big, scratch("big.csv")) == 2);
  const json ok = {{"lattice", {{"type", "dimer"}}}, {"task", {{"name", "spectrum"}}}};
  CHECK(run_doc(ok, fs::path("/nonexistent-dir/x/report.csv")) == 2);
}

TEST_CASE("run: failing check exits 1") {
  // above half filling of up spins the excitation norm condition is violated
  const json doc = {{"lattice", {{"type", "chain"}, {"dims", {4}}}}, {"task", {{"name", "gap"}, {"N", 6}}}};
  std::string text;
  CHECK(run_doc(doc, scratch("fail.csv"), &text) == 1);
  CHECK(text.find("FAIL gap-norm-condition") != std::string::npos);
}

TEST_CASE("run: identical configs give byte-identical json") {
  const json doc = {{"lattice", {{"type", "chain"}, {"dims", {4}}}},
                    {"model", {{"U", 3.0}}},
                    {"task", {{"name", "gap"}, {"alpha", {{"kind", "random"}}}}},
                    {"output", {{"format", "json"}}}};
  const auto a = scratch("det-a.json"), b = scratch("det-b.json");
  REQUIRE(run_doc(doc, a) == run_doc(doc, b));
  auto ja = json::parse(slurp(a)), jb = json::parse(slurp(b));
  ja["config"]["output"].erase("path");
  jb["config"]["output"].erase("path");
  CHECK(ja == jb);
  CHECK(slurp(a).substr(slurp(a).find("\"rows\"")) == slurp(b).substr(slurp(b).find("\"rows\"")));
}

#ifdef AHM_VERIFY_EXE
TEST_CASE("executable exit codes") {
  const auto cfg = scratch("exe.json");
  std::ofstream(cfg) << R"({"lattice":{"type":"dimer"},"task":{"name":"thermal-scan","beta":[1]}})";
  const std::string cmd = std::string(AHM_VERIFY_EXE) + " " + cfg.string() + " -o " + scratch("exe.csv").string() +
                          " > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  const std::string missing = std::string(AHM_VERIFY_EXE) + " /nonexistent.json > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(missing.c_str())) == 2);
  const std::string noargs = std::string(AHM_VERIFY_EXE) + " > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(noargs.c_str())) == 2);
}
#endif
